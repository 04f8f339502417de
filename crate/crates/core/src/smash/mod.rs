//! Canonical-form arithmetic in the smash product `S_q(V) # G` for a
//! diagonal action of a finite abelian group `G = Z_{n_1} x ... x Z_{n_m}`.
//!
//! Multiplication follows `(a # g)(b # h) = a g(b) # gh` together with the
//! quantum-symmetric relations `w_i w_j = q_ij w_j w_i`. When every `q_ij` and
//! every character value is a power of one root of unity, products are
//! computed on integer exponents and a single table lookup (the fast path);
//! otherwise the coefficients are computed with generic scalar powers.

mod element;
mod group;
mod monomial;

use std::fmt;

use thiserror::Error;

use crate::scalars::{FieldSpec, Scalar, ScalarError};
use crate::syntax::{self, Atom, MulOp};

pub(crate) use element::write_signed_term;
pub use element::SmashElement;
pub use group::GroupElement;
pub use monomial::{format_word, Letter, SmashMonomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension k must be at least 1")]
    EmptyBasis,
    #[error("q-matrix must be {k}x{k}")]
    QMatrixShape { k: usize },
    #[error("q_{i}{i} must be 1, got {value}", i = .i + 1)]
    DiagonalNotOne { i: usize, value: String },
    #[error("q_{j}{i} must be the inverse of q_{i}{j}", i = .i + 1, j = .j + 1)]
    NotInversePair { i: usize, j: usize },
    #[error("group orders must be positive")]
    BadGroupOrder,
    #[error("character table must be {k}x{m}")]
    CharacterShape { k: usize, m: usize },
    #[error("chi_{i}(generator {j}) must be a root of unity of order dividing {n}", i = .i + 1, j = .j + 1)]
    CharacterOrder { i: usize, j: usize, n: u32 },
    #[error("entry lives in Q(zeta_{found}), expected Q(zeta_{expected})")]
    WrongField { expected: u32, found: u32 },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("unknown symbol '{0}' in element")]
    UnknownSymbol(String),
    #[error("variable index out of range in '{0}'")]
    VariableOutOfRange(String),
    #[error("group literal has {found} exponents, expected {expected}")]
    GroupArity { expected: usize, found: usize },
    #[error("only scalars may appear as divisors or with negative exponents")]
    NonScalarDivision,
}

/// Exponent tables used when all structure constants are powers of a single
/// root of unity `rho` of order `order`.
#[derive(Clone)]
struct RootTables {
    order: u32,
    q_exp: Vec<Vec<u32>>,
    chi_exp: Vec<Vec<u32>>,
    powers: Vec<Scalar>,
}

/// Structure data of `S_q(V) # G`.
#[derive(Clone)]
pub struct AlgebraSpec {
    field: FieldSpec,
    k: usize,
    qmatrix: Vec<Vec<Scalar>>,
    group_orders: Vec<u32>,
    characters: Vec<Vec<Scalar>>,
    fast: Option<RootTables>,
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("n", &self.field.n())
            .field("k", &self.k)
            .field("group_orders", &self.group_orders)
            .finish()
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.qmatrix == other.qmatrix
            && self.group_orders == other.group_orders
            && self.characters == other.characters
    }
}

impl AlgebraSpec {
    /// Validates and builds the algebra. `characters[i][j]` is
    /// `chi_i(generator_j)`.
    pub fn new(
        field: FieldSpec,
        qmatrix: Vec<Vec<Scalar>>,
        group_orders: Vec<u32>,
        characters: Vec<Vec<Scalar>>,
    ) -> Result<Self, AlgebraError> {
        let k = qmatrix.len();
        if k == 0 {
            return Err(AlgebraError::EmptyBasis);
        }
        if qmatrix.iter().any(|row| row.len() != k) {
            return Err(AlgebraError::QMatrixShape { k });
        }
        let m = group_orders.len();
        if group_orders.iter().any(|&n| n == 0) {
            return Err(AlgebraError::BadGroupOrder);
        }
        if characters.len() != k || characters.iter().any(|row| row.len() != m) {
            return Err(AlgebraError::CharacterShape { k, m });
        }
        for s in qmatrix.iter().chain(&characters).flatten() {
            if s.field() != field {
                return Err(AlgebraError::WrongField { expected: field.n(), found: s.field().n() });
            }
        }
        for i in 0..k {
            if !qmatrix[i][i].is_one() {
                return Err(AlgebraError::DiagonalNotOne { i, value: qmatrix[i][i].to_string() });
            }
            for j in 0..k {
                if !(&qmatrix[i][j] * &qmatrix[j][i]).is_one() {
                    return Err(AlgebraError::NotInversePair { i, j });
                }
            }
        }
        for (i, row) in characters.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.pow_u(group_orders[j] as u64).is_one() {
                    return Err(AlgebraError::CharacterOrder { i, j, n: group_orders[j] });
                }
            }
        }
        let mut spec = AlgebraSpec { field, k, qmatrix, group_orders, characters, fast: None };
        spec.fast = spec.build_root_tables();
        Ok(spec)
    }

    fn build_root_tables(&self) -> Option<RootTables> {
        let n = self.field.n();
        let (rho, order) = if n % 2 == 0 { (self.field.zeta_pow(1), n) } else { (-&self.field.zeta_pow(1), 2 * n) };
        let powers: Vec<Scalar> = {
            let mut v = Vec::with_capacity(order as usize);
            let mut p = self.field.one();
            for _ in 0..order {
                v.push(p.clone());
                p = &p * &rho;
            }
            v
        };
        let log = |s: &Scalar| powers.iter().position(|p| p == s).map(|e| e as u32);
        let q_exp = self
            .qmatrix
            .iter()
            .map(|row| row.iter().map(log).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let chi_exp = self
            .characters
            .iter()
            .map(|row| row.iter().map(log).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(RootTables { order, q_exp, chi_exp, powers })
    }

    /// Copy of this spec that always takes the generic-scalar path.
    pub fn without_fast_path(&self) -> Self {
        AlgebraSpec { fast: None, ..self.clone() }
    }

    pub fn has_fast_path(&self) -> bool {
        self.fast.is_some()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `dim V`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of cyclic factors of `G`.
    pub fn m(&self) -> usize {
        self.group_orders.len()
    }

    pub fn group_orders(&self) -> &[u32] {
        &self.group_orders
    }

    pub fn group_size(&self) -> u64 {
        self.group_orders.iter().map(|&n| n as u64).product()
    }

    /// `q_ij`, zero-based.
    pub fn q(&self, i: usize, j: usize) -> &Scalar {
        &self.qmatrix[i][j]
    }

    pub fn qmatrix(&self) -> &[Vec<Scalar>] {
        &self.qmatrix
    }

    /// `chi_i(generator_j)`, zero-based.
    pub fn character_on_generator(&self, i: usize, j: usize) -> &Scalar {
        &self.characters[i][j]
    }

    pub fn characters(&self) -> &[Vec<Scalar>] {
        &self.characters
    }

    /// `chi_i(g)`.
    pub fn chi(&self, i: usize, g: &GroupElement) -> Scalar {
        if let Some(t) = &self.fast {
            let e: u64 = g.exponents().iter().zip(&t.chi_exp[i]).map(|(&a, &c)| a as u64 * c as u64).sum();
            return t.powers[(e % t.order as u64) as usize].clone();
        }
        g.exponents().iter().zip(&self.characters[i]).fold(self.field.one(), |acc, (&e, c)| &acc * &c.pow_u(e as u64))
    }

    /// `prod_i chi_i(g)^alpha_i`, the scalar by which `g` acts on `w^alpha`.
    pub fn chi_alpha(&self, alpha: &[u32], g: &GroupElement) -> Scalar {
        if let Some(t) = &self.fast {
            let mut e: u64 = 0;
            for (i, &a) in alpha.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let ci: u64 = g.exponents().iter().zip(&t.chi_exp[i]).map(|(&x, &c)| x as u64 * c as u64).sum();
                e += a as u64 * ci;
            }
            return t.powers[(e % t.order as u64) as usize].clone();
        }
        alpha
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .fold(self.field.one(), |acc, (i, &a)| &acc * &self.chi(i, g).pow_u(a as u64))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.m())
    }

    pub fn group_mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        g.mul(h, &self.group_orders)
    }

    pub fn group_inv(&self, g: &GroupElement) -> GroupElement {
        g.inverse(&self.group_orders)
    }

    pub fn group_element(&self, exps: &[i64]) -> Result<GroupElement, AlgebraError> {
        if exps.len() != self.m() {
            return Err(AlgebraError::GroupArity { expected: self.m(), found: exps.len() });
        }
        Ok(GroupElement::from_exponents(exps, &self.group_orders))
    }

    pub fn generator(&self, j: usize) -> GroupElement {
        GroupElement::generator(j, &self.group_orders)
    }

    pub fn group_elements(&self) -> Vec<GroupElement> {
        GroupElement::all(&self.group_orders)
    }

    /// Exponent vectors with `|alpha| <= bound`, in increasing lex order.
    pub fn exponent_vectors(&self, bound: u32) -> Vec<Vec<u32>> {
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for a in 0..=left {
                cur.push(a);
                rec(k, left - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.k, bound, &mut Vec::with_capacity(self.k), &mut out);
        out
    }

    /// All basis monomials `w^alpha g` with `|alpha| <= bound`, in monomial order.
    pub fn basis_monomials(&self, bound: u32) -> Vec<SmashMonomial> {
        let gs = self.group_elements();
        let mut out = Vec::new();
        for alpha in self.exponent_vectors(bound) {
            for g in &gs {
                out.push(SmashMonomial::new(&alpha, g.clone()));
            }
        }
        out
    }

    pub fn one_monomial(&self) -> SmashMonomial {
        SmashMonomial::one(self.k, self.m())
    }

    pub fn one(&self) -> SmashElement {
        SmashElement::from_monomial(self.one_monomial(), self.field.one())
    }

    /// The generator `w_i` (zero-based).
    pub fn w(&self, i: usize) -> SmashElement {
        let mut m = self.one_monomial();
        m.alpha[i] = 1;
        SmashElement::from_monomial(m, self.field.one())
    }

    pub fn group_as_element(&self, g: &GroupElement) -> SmashElement {
        SmashElement::from_monomial(SmashMonomial { alpha: self.one_monomial().alpha, g: g.clone() }, self.field.one())
    }

    pub fn monomial_element(&self, alpha: &[u32], g: &GroupElement) -> SmashElement {
        SmashElement::from_monomial(SmashMonomial::new(alpha, g.clone()), self.field.one())
    }

    pub fn scalar_element(&self, c: Scalar) -> SmashElement {
        SmashElement::from_monomial(self.one_monomial(), c)
    }

    /// `(w^a g)(w^b h) = c * w^(a+b) gh`. The scalar `c` collects the group
    /// action `chi^b(g)` and the factors `q_ij^(a_i b_j)` for `i > j` picked
    /// up while moving `w_j^b_j` left past `w_i^a_i`.
    pub fn monomial_mul(&self, m1: &SmashMonomial, m2: &SmashMonomial) -> (Scalar, SmashMonomial) {
        let alpha = m1.alpha.iter().zip(&m2.alpha).map(|(a, b)| a + b).collect();
        let g = self.group_mul(&m1.g, &m2.g);
        let prod = SmashMonomial { alpha, g };
        if let Some(t) = &self.fast {
            let mut e: u64 = 0;
            for (i, &b) in m2.alpha.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ci: u64 = m1.g.exponents().iter().zip(&t.chi_exp[i]).map(|(&x, &c)| x as u64 * c as u64).sum();
                e += b as u64 * ci;
                for (j, &a) in m1.alpha.iter().enumerate().skip(i + 1) {
                    e += a as u64 * b as u64 * t.q_exp[j][i] as u64;
                }
            }
            return (t.powers[(e % t.order as u64) as usize].clone(), prod);
        }
        let mut c = self.chi_alpha(&m2.alpha, &m1.g);
        for (j, &b) in m2.alpha.iter().enumerate() {
            if b == 0 {
                continue;
            }
            for (i, &a) in m1.alpha.iter().enumerate().skip(j + 1) {
                if a > 0 {
                    c = &c * &self.qmatrix[i][j].pow_u(a as u64 * b as u64);
                }
            }
        }
        (c, prod)
    }

    pub fn mul(&self, a: &SmashElement, b: &SmashElement) -> SmashElement {
        if a.is_zero() || b.is_zero() {
            return SmashElement::zero();
        }
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for (m1, c1) in a.terms() {
            for (m2, c2) in b.terms() {
                let (c, m) = self.monomial_mul(m1, m2);
                terms.push((m, &(c1 * c2) * &c));
            }
        }
        SmashElement::from_terms(terms)
    }

    /// Product of a list of elements, left to right.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a SmashElement>) -> SmashElement {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `g(a)`: the algebra automorphism scaling `w^alpha h` by `chi^alpha(g)`.
    pub fn group_act(&self, g: &GroupElement, a: &SmashElement) -> SmashElement {
        if g.is_identity() {
            return a.clone();
        }
        a.map_coefficients(|m, c| c * &self.chi_alpha(&m.alpha, g))
    }

    /// Evaluates a letter word by multiplying its letters with [`Self::mul`].
    pub fn word_product(&self, word: &[Letter]) -> SmashElement {
        let elems: Vec<SmashElement> = word.iter().map(|l| self.letter_element(l)).collect();
        self.product(&elems)
    }

    pub fn letter_element(&self, l: &Letter) -> SmashElement {
        match l {
            Letter::W(i) => self.w(*i),
            Letter::G(g) => self.group_as_element(g),
        }
    }

    /// Brute-force normal form of a free word in `T(V) # G`: repeatedly
    /// rewrites the leftmost out-of-order adjacent pair with one defining
    /// relation (`g w_i -> chi_i(g) w_i g`, `w_i w_j -> q_ij w_j w_i` for
    /// `i > j`, `g h -> gh`) until the word is sorted.
    ///
    /// Independent of [`Self::monomial_mul`]: character values and q-powers
    /// are accumulated one rewrite at a time with generic scalar products.
    pub fn free_reduce_oracle(&self, word: &[Letter]) -> SmashElement {
        let mut coeff = self.field.one();
        let mut w: Vec<Letter> = word.to_vec();
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < w.len() {
                match (&w[i], &w[i + 1]) {
                    (Letter::G(g), Letter::G(h)) => {
                        let gh = self.group_mul(g, h);
                        w.splice(i..i + 2, [Letter::G(gh)]);
                        changed = true;
                        break;
                    }
                    (Letter::G(g), Letter::W(j)) => {
                        let mut v = self.field.one();
                        for (e, c) in g.exponents().iter().zip(&self.characters[*j]) {
                            for _ in 0..*e {
                                v = &v * c;
                            }
                        }
                        coeff = &coeff * &v;
                        w.swap(i, i + 1);
                        changed = true;
                        break;
                    }
                    (Letter::W(a), Letter::W(b)) if a > b => {
                        coeff = &coeff * &self.qmatrix[*a][*b];
                        w.swap(i, i + 1);
                        changed = true;
                        break;
                    }
                    _ => i += 1,
                }
            }
            if !changed {
                break;
            }
        }
        let mut alpha = vec![0u32; self.k];
        let mut g = self.identity();
        for l in &w {
            match l {
                Letter::W(i) => alpha[*i] += 1,
                Letter::G(h) => g = self.group_mul(&g, h),
            }
        }
        SmashElement::from_monomial(SmashMonomial::new(&alpha, g), coeff)
    }

    /// Parses the canonical element syntax, e.g. `w1*w2 - 1/2 * w3 * g[(1,0)]`.
    /// Factors are multiplied in the order written, so `w2*w1` is reduced.
    pub fn parse_element(&self, src: &str) -> Result<SmashElement, AlgebraError> {
        let expr = syntax::parse_expr(src).map_err(ScalarError::from)?;
        self.eval_expr(&expr)
    }

    fn eval_expr(&self, expr: &syntax::Expr) -> Result<SmashElement, AlgebraError> {
        let mut acc = SmashElement::zero();
        for term in &expr.terms {
            let mut t = self.one();
            for (op, f) in &term.factors {
                let base = match &f.atom {
                    Atom::Int(i) => self.scalar_element(
                        self.field.rational(crate::scalars::Rational::from_bigints(i.clone(), 1.into())),
                    ),
                    Atom::Ident(name) if name == "z" => self.scalar_element(self.field.zeta_pow(1)),
                    Atom::Ident(name) if name.starts_with('w') && name.len() > 1 => {
                        let idx: usize = name[1..].parse().map_err(|_| AlgebraError::UnknownSymbol(name.clone()))?;
                        if idx == 0 || idx > self.k {
                            return Err(AlgebraError::VariableOutOfRange(name.clone()));
                        }
                        self.w(idx - 1)
                    }
                    Atom::Ident(name) => return Err(AlgebraError::UnknownSymbol(name.clone())),
                    Atom::Group(exps) => self.group_as_element(&self.group_element(exps)?),
                    Atom::Paren(e) => self.eval_expr(e)?,
                };
                let v = match f.exponent {
                    None => base,
                    Some(e) if e >= 0 => {
                        let mut p = self.one();
                        for _ in 0..e {
                            p = self.mul(&p, &base);
                        }
                        p
                    }
                    Some(e) => {
                        let s = as_scalar(self, &base).ok_or(AlgebraError::NonScalarDivision)?;
                        self.scalar_element(s.pow(e)?)
                    }
                };
                t = match op {
                    MulOp::Mul => self.mul(&t, &v),
                    MulOp::Div => {
                        let s = as_scalar(self, &v).ok_or(AlgebraError::NonScalarDivision)?;
                        t.scale(&s.inv()?)
                    }
                };
            }
            acc = if term.negated { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }
}

fn as_scalar(spec: &AlgebraSpec, e: &SmashElement) -> Option<Scalar> {
    match e.terms() {
        [] => Some(spec.field.zero()),
        [(m, c)] if m.is_one() => Some(c.clone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests;
