//! Actions of `H_q` (generated by `sigma^{+-1}`, `D_1`, `D_2`) on `S_q(V) # G`.
//!
//! The operators are given on the generators `w_i` and the generators of `G`
//! and extended to basis monomials by the skew-Leibniz rules
//!
//! ```text
//! sigma(ab) = sigma(a) sigma(b)
//! D1(ab)    = D1(a) sigma(b) + a D1(b)
//! D2(ab)    = D2(a) b + sigma(a) D2(b)
//! ```
//!
//! folded along a fixed letter decomposition. Whether the result is well
//! defined is a question for [`checks`], not an assumption.

pub mod checks;
pub mod closed_form;

use std::collections::HashMap;
use std::sync::RwLock;

use thiserror::Error;

use crate::scalars::Scalar;
use crate::smash::{AlgebraError, AlgebraSpec, GroupElement, Letter, SmashElement, SmashMonomial};

pub use closed_form::{closed_form_oracle, Family, FamilyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{what}: expected {expected} entries, found {found}")]
    Length { what: &'static str, expected: usize, found: usize },
    #[error("xi(generator {j}) must be nonzero with xi^{n} = 1", j = .j + 1)]
    XiNotCharacter { j: usize, n: u32 },
    #[error("{0} is not over the algebra's field")]
    WrongField(&'static str),
    #[error("{0} has the wrong shape for this algebra")]
    Shape(&'static str),
    #[error("lambda_{i} must be nonzero", i = .0 + 1)]
    ZeroLambda(usize),
    #[error("P{0} must lie in S_q(V) (no group part)")]
    PNotPolynomial(usize),
    #[error("q must be nonzero")]
    ZeroQ,
}

/// One of the three operators of `H_q` acting on the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Sigma,
    D1,
    D2,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Sigma => "sigma",
            Op::D1 => "D1",
            Op::D2 => "D2",
        }
    }
}

/// Images of `sigma`, `D_1`, `D_2` on `V + kG`, given on the generators.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralActionSpec {
    /// `sigma(w_i)`.
    pub sigma_on_v: Vec<SmashElement>,
    /// `xi(generator_j)`; `sigma(g) = xi(g) g`.
    pub xi: Vec<Scalar>,
    pub d1_on_w: Vec<SmashElement>,
    /// `D_1(generator_j)`.
    pub d1_on_g: Vec<SmashElement>,
    pub d2_on_w: Vec<SmashElement>,
    pub d2_on_g: Vec<SmashElement>,
}

/// The diagonal shape `sigma(w_i) = lambda_i w_i`, `D_1(w_1) = P_1 g_1`,
/// `D_2(w_2) = P_2 g_2`, all other generator images zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialActionSpec {
    pub lambda: Vec<Scalar>,
    pub xi: Vec<Scalar>,
    pub p1: SmashElement,
    pub g1: GroupElement,
    pub p2: SmashElement,
    pub g2: GroupElement,
    /// `q_p[i][j]` is the declared `q_{P_{i+1}, w_{j+1}}`; diagonal entries
    /// (`j == i`) are ignored.
    pub q_p: [Vec<Scalar>; 2],
}

impl SpecialActionSpec {
    pub fn to_general(&self, algebra: &AlgebraSpec) -> GeneralActionSpec {
        let k = algebra.k();
        let m = algebra.m();
        let zeros = |len: usize| vec![SmashElement::zero(); len];
        let mut d1_on_w = zeros(k);
        let mut d2_on_w = zeros(k);
        d1_on_w[0] = algebra.mul(&self.p1, &algebra.group_as_element(&self.g1));
        if k > 1 {
            d2_on_w[1] = algebra.mul(&self.p2, &algebra.group_as_element(&self.g2));
        }
        GeneralActionSpec {
            sigma_on_v: self.lambda.iter().enumerate().map(|(i, l)| algebra.w(i).scale(l)).collect(),
            xi: self.xi.clone(),
            d1_on_w,
            d1_on_g: zeros(m),
            d2_on_w,
            d2_on_g: zeros(m),
        }
    }
}

#[derive(Default)]
struct Caches {
    sigma: RwLock<HashMap<SmashMonomial, SmashElement>>,
    d1: RwLock<HashMap<SmashMonomial, SmashElement>>,
    d2: RwLock<HashMap<SmashMonomial, SmashElement>>,
}

impl Caches {
    fn get(&self, op: Op) -> &RwLock<HashMap<SmashMonomial, SmashElement>> {
        match op {
            Op::Sigma => &self.sigma,
            Op::D1 => &self.d1,
            Op::D2 => &self.d2,
        }
    }
}

/// `sigma`, `D_1`, `D_2` on a fixed algebra, with memoized monomial images.
pub struct HopfAction {
    algebra: AlgebraSpec,
    q: Scalar,
    q_order: Option<u32>,
    general: GeneralActionSpec,
    special: Option<SpecialActionSpec>,
    caches: Caches,
}

impl std::fmt::Debug for HopfAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HopfAction").field("algebra", &self.algebra).field("q", &self.q).finish()
    }
}

impl Clone for HopfAction {
    fn clone(&self) -> Self {
        HopfAction {
            algebra: self.algebra.clone(),
            q: self.q.clone(),
            q_order: self.q_order,
            general: self.general.clone(),
            special: self.special.clone(),
            caches: Caches::default(),
        }
    }
}

fn check_elements(
    algebra: &AlgebraSpec,
    what: &'static str,
    es: &[SmashElement],
    len: usize,
) -> Result<(), ActionError> {
    if es.len() != len {
        return Err(ActionError::Length { what, expected: len, found: es.len() });
    }
    for e in es {
        check_element(algebra, what, e)?;
    }
    Ok(())
}

fn check_element(algebra: &AlgebraSpec, what: &'static str, e: &SmashElement) -> Result<(), ActionError> {
    for (m, c) in e.terms() {
        if c.field() != algebra.field() {
            return Err(ActionError::WrongField(what));
        }
        if m.alpha.len() != algebra.k() || m.g.exponents().len() != algebra.m() {
            return Err(ActionError::Shape(what));
        }
        if m.g.exponents().iter().zip(algebra.group_orders()).any(|(e, n)| e >= n) {
            return Err(ActionError::Shape(what));
        }
    }
    Ok(())
}

impl HopfAction {
    pub fn new_general(algebra: AlgebraSpec, q: Scalar, general: GeneralActionSpec) -> Result<Self, ActionError> {
        let k = algebra.k();
        let m = algebra.m();
        if q.field() != algebra.field() {
            return Err(ActionError::WrongField("q"));
        }
        if q.is_zero() {
            return Err(ActionError::ZeroQ);
        }
        check_elements(&algebra, "sigma(w_i)", &general.sigma_on_v, k)?;
        check_elements(&algebra, "D1(w_i)", &general.d1_on_w, k)?;
        check_elements(&algebra, "D2(w_i)", &general.d2_on_w, k)?;
        check_elements(&algebra, "D1(g_j)", &general.d1_on_g, m)?;
        check_elements(&algebra, "D2(g_j)", &general.d2_on_g, m)?;
        if general.xi.len() != m {
            return Err(ActionError::Length { what: "xi", expected: m, found: general.xi.len() });
        }
        for (j, x) in general.xi.iter().enumerate() {
            let n = algebra.group_orders()[j];
            if x.field() != algebra.field() {
                return Err(ActionError::WrongField("xi"));
            }
            if x.is_zero() || !x.pow_u(n as u64).is_one() {
                return Err(ActionError::XiNotCharacter { j, n });
            }
        }
        let q_order = q.multiplicative_order();
        Ok(HopfAction { algebra, q, q_order, general, special: None, caches: Caches::default() })
    }

    pub fn new_special(algebra: AlgebraSpec, q: Scalar, special: SpecialActionSpec) -> Result<Self, ActionError> {
        let k = algebra.k();
        if special.lambda.len() != k {
            return Err(ActionError::Length { what: "lambda", expected: k, found: special.lambda.len() });
        }
        if let Some(i) = special.lambda.iter().position(Scalar::is_zero) {
            return Err(ActionError::ZeroLambda(i));
        }
        for (i, p) in [&special.p1, &special.p2].into_iter().enumerate() {
            check_element(&algebra, "P_i", p)?;
            if p.terms().iter().any(|(m, _)| !m.g.is_identity()) {
                return Err(ActionError::PNotPolynomial(i + 1));
            }
        }
        for g in [&special.g1, &special.g2] {
            if g.exponents().len() != algebra.m() {
                return Err(ActionError::Shape("g_i"));
            }
        }
        for row in &special.q_p {
            if row.len() != k {
                return Err(ActionError::Length { what: "q_P", expected: k, found: row.len() });
            }
            if row.iter().any(|s| s.field() != algebra.field()) {
                return Err(ActionError::WrongField("q_P"));
            }
        }
        let general = special.to_general(&algebra);
        let mut action = Self::new_general(algebra, q, general)?;
        action.special = Some(special);
        Ok(action)
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    /// `n` when `q` is a primitive `n`-th root of unity with `n >= 2`.
    pub fn nilpotency_order(&self) -> Option<u32> {
        self.q_order.filter(|&n| n >= 2)
    }

    pub fn general(&self) -> &GeneralActionSpec {
        &self.general
    }

    pub fn special(&self) -> Option<&SpecialActionSpec> {
        self.special.as_ref()
    }

    /// `xi(g)`.
    pub fn xi(&self, g: &GroupElement) -> Scalar {
        g.exponents()
            .iter()
            .zip(&self.general.xi)
            .fold(self.algebra.field().one(), |acc, (&e, x)| &acc * &x.pow_u(e as u64))
    }

    /// Image of a single generator letter. Group letters other than the
    /// standard generators go through the monomial extension.
    pub fn letter_image(&self, op: Op, letter: &Letter) -> SmashElement {
        match letter {
            Letter::W(i) => match op {
                Op::Sigma => self.general.sigma_on_v[*i].clone(),
                Op::D1 => self.general.d1_on_w[*i].clone(),
                Op::D2 => self.general.d2_on_w[*i].clone(),
            },
            Letter::G(g) => {
                self.monomial_image(op, &SmashMonomial { alpha: self.algebra.one_monomial().alpha, g: g.clone() })
            }
        }
    }

    fn generator_image(&self, op: Op, j: usize) -> SmashElement {
        let gen = self.algebra.generator(j);
        match op {
            Op::Sigma => self.algebra.group_as_element(&gen).scale(&self.general.xi[j]),
            Op::D1 => self.general.d1_on_g[j].clone(),
            Op::D2 => self.general.d2_on_g[j].clone(),
        }
    }

    /// `op(m)` for a basis monomial, via `m = m' x` with `x` the last letter:
    /// the last group generator if `g != e`, otherwise the highest `w_i`.
    pub fn monomial_image(&self, op: Op, m: &SmashMonomial) -> SmashElement {
        if let Some(v) = self.caches.get(op).read().expect("cache lock").get(m) {
            return v.clone();
        }
        let v = self.compute_monomial_image(op, m);
        self.caches.get(op).write().expect("cache lock").insert(m.clone(), v.clone());
        v
    }

    fn compute_monomial_image(&self, op: Op, m: &SmashMonomial) -> SmashElement {
        let a = &self.algebra;
        if m.is_one() {
            return match op {
                Op::Sigma => a.one(),
                Op::D1 | Op::D2 => SmashElement::zero(),
            };
        }
        let mut prefix = m.clone();
        let (x, x_sigma, x_op) = if let Some(j) = m.g.exponents().iter().rposition(|&e| e > 0) {
            let gen = a.generator(j);
            prefix.g = a.group_mul(&m.g, &a.group_inv(&gen));
            (a.group_as_element(&gen), self.generator_image(Op::Sigma, j), self.generator_image(op, j))
        } else {
            let i = m.alpha.iter().rposition(|&e| e > 0).expect("non-identity monomial");
            prefix.alpha[i] -= 1;
            (a.w(i), self.general.sigma_on_v[i].clone(), self.letter_image(op, &Letter::W(i)))
        };
        let p = SmashElement::from_monomial(prefix.clone(), a.field().one());
        match op {
            Op::Sigma => a.mul(&self.monomial_image(Op::Sigma, &prefix), &x_sigma),
            Op::D1 => a.mul(&self.monomial_image(Op::D1, &prefix), &x_sigma).add(&a.mul(&p, &x_op)),
            Op::D2 => a
                .mul(&self.monomial_image(Op::D2, &prefix), &x)
                .add(&a.mul(&self.monomial_image(Op::Sigma, &prefix), &x_op)),
        }
    }

    pub fn apply(&self, op: Op, e: &SmashElement) -> SmashElement {
        let terms = e.terms().iter().flat_map(|(m, c)| self.monomial_image(op, m).scale(c).into_terms()).collect();
        SmashElement::from_terms(terms)
    }

    pub fn apply_sigma(&self, e: &SmashElement) -> SmashElement {
        self.apply(Op::Sigma, e)
    }

    pub fn apply_d1(&self, e: &SmashElement) -> SmashElement {
        self.apply(Op::D1, e)
    }

    pub fn apply_d2(&self, e: &SmashElement) -> SmashElement {
        self.apply(Op::D2, e)
    }

    /// `op^power(e)`.
    pub fn apply_power(&self, op: Op, power: u32, e: &SmashElement) -> SmashElement {
        let mut v = e.clone();
        for _ in 0..power {
            if v.is_zero() {
                break;
            }
            v = self.apply(op, &v);
        }
        v
    }

    /// Applies the skew-Leibniz rules along a free word, one letter at a time,
    /// without first reducing the word to a basis monomial.
    pub fn word_image(&self, op: Op, word: &[Letter]) -> SmashElement {
        let a = &self.algebra;
        let mut value = a.one();
        let mut sigma = a.one();
        let mut acc = match op {
            Op::Sigma => a.one(),
            Op::D1 | Op::D2 => SmashElement::zero(),
        };
        for l in word {
            let x = a.letter_element(l);
            let xs = self.letter_image(Op::Sigma, l);
            acc = match op {
                Op::Sigma => a.mul(&acc, &xs),
                Op::D1 => a.mul(&acc, &xs).add(&a.mul(&value, &self.letter_image(Op::D1, l))),
                Op::D2 => a.mul(&acc, &x).add(&a.mul(&sigma, &self.letter_image(Op::D2, l))),
            };
            value = a.mul(&value, &x);
            sigma = a.mul(&sigma, &xs);
        }
        acc
    }
}

#[cfg(test)]
mod tests;
