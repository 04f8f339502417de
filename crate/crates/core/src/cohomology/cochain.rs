//! Degree-2 cochains on `S_q(V)`, the averaging map `R_2`, the extension
//! `theta_2^*` to `S_q(V) # G`, and Koszul 2-cochains `kappa`.
//!
//! `G` acts on cochains by `(g.f)(a (x) b) = g(f(g^{-1}(a) (x) g^{-1}(b)))` and
//! on dual vectors by `g(w_i^*) = chi_i(g)^{-1} w_i^*`.

use std::fmt;

use thiserror::Error;

use crate::scalars::Rational;
use crate::smash::{AlgebraSpec, GroupElement, SmashElement, SmashMonomial};

use super::koszul::{psi2_value, WedgeIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("kappa form index needs i < j < k, got ({i}, {j}) with k = {k}", i = .i + 1, j = .j + 1)]
    BadForm { i: usize, j: usize, k: usize },
}

/// A bilinear map `S_q(V) (x) S_q(V) -> S_q(V) # G` given on generator pairs.
///
/// Arguments are read through their linear parts: `gamma(a (x) b)` is
/// `sum a_i b_j gamma(w_i, w_j)` where `a_i` is the coefficient of `w_i` in `a`.
#[derive(Clone, PartialEq)]
pub struct Cochain2 {
    values: Vec<Vec<SmashElement>>,
}

impl Cochain2 {
    pub fn zero(k: usize) -> Self {
        Cochain2 { values: vec![vec![SmashElement::zero(); k]; k] }
    }

    /// Zero-based `gamma(w_i, w_j) = f(i, j)`.
    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> SmashElement) -> Self {
        Cochain2 { values: (0..k).map(|i| (0..k).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &SmashElement {
        &self.values[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: SmashElement) {
        self.values[i][j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(SmashElement::is_zero)
    }

    pub fn evaluate(&self, algebra: &AlgebraSpec, a: &SmashElement, b: &SmashElement) -> SmashElement {
        let a = linear_part(algebra, a);
        let b = linear_part(algebra, b);
        let mut out = SmashElement::zero();
        for (i, ai) in &a {
            for (j, bj) in &b {
                out = out.add(&self.values[*i][*j].scale(&(ai * bj)));
            }
        }
        out
    }

    /// `g.gamma`.
    pub fn act(&self, algebra: &AlgebraSpec, g: &GroupElement) -> Cochain2 {
        let g_inv = algebra.group_inv(g);
        let w: Vec<SmashElement> = (0..self.k()).map(|i| algebra.group_act(&g_inv, &algebra.w(i))).collect();
        Cochain2::from_fn(self.k(), |i, j| algebra.group_act(g, &self.evaluate(algebra, &w[i], &w[j])))
    }

    pub fn is_g_invariant(&self, algebra: &AlgebraSpec) -> bool {
        algebra.group_elements().iter().all(|g| self.act(algebra, g) == *self)
    }
}

impl fmt::Display for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, "; ")?;
                }
                first = false;
                write!(f, "(w{}, w{}) -> {v}", i + 1, j + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficients of `w_1, ..., w_k` (with trivial group part) in `a`.
fn linear_part(algebra: &AlgebraSpec, a: &SmashElement) -> Vec<(usize, crate::scalars::Scalar)> {
    let e = algebra.identity();
    (0..algebra.k())
        .filter_map(|i| {
            let mut alpha = vec![0; algebra.k()];
            alpha[i] = 1;
            a.coefficient(&SmashMonomial::new(&alpha, e.clone())).map(|c| (i, c.clone()))
        })
        .collect()
}

/// `R_2(gamma) = 1/|G| sum_g g.gamma`.
pub fn r2_average(algebra: &AlgebraSpec, gamma: &Cochain2) -> Cochain2 {
    let mut sum = Cochain2::zero(gamma.k());
    for g in algebra.group_elements() {
        let t = gamma.act(algebra, &g);
        sum = Cochain2::from_fn(gamma.k(), |i, j| sum.get(i, j).add(t.get(i, j)));
    }
    let inv = algebra.field().rational(Rational::new(1, algebra.group_size() as i64));
    Cochain2::from_fn(gamma.k(), |i, j| sum.get(i, j).scale(&inv))
}

/// `theta_2^*(gamma)(a g (x) b h) = gamma(a (x) g(b)) g h`.
pub fn theta2_extend(
    algebra: &AlgebraSpec,
    gamma: &Cochain2,
    a: &SmashElement,
    g: &GroupElement,
    b: &SmashElement,
    h: &GroupElement,
) -> SmashElement {
    let v = gamma.evaluate(algebra, a, &algebra.group_act(g, b));
    algebra.mul(&v, &algebra.group_as_element(&algebra.group_mul(g, h)))
}

/// `element (x) w_i^* ^ w_j^*` (zero-based, `i < j`).
#[derive(Debug, Clone, PartialEq)]
pub struct Kappa {
    pub element: SmashElement,
    i: usize,
    j: usize,
}

impl Kappa {
    pub fn new(algebra: &AlgebraSpec, element: SmashElement, i: usize, j: usize) -> Result<Self, CochainError> {
        let k = algebra.k();
        if i >= j || j >= k {
            return Err(CochainError::BadForm { i, j, k });
        }
        Ok(Kappa { element, i, j })
    }

    pub fn form(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// `kappa(w_a ^ w_b)` for a degree-2 wedge.
    pub fn pair(&self, wedge: WedgeIndex) -> SmashElement {
        if wedge == WedgeIndex::from_indices(&[self.i, self.j]) {
            self.element.clone()
        } else {
            SmashElement::zero()
        }
    }

    /// `g(kappa) = chi_i(g)^{-1} chi_j(g)^{-1} g(element) (x) w_i^* ^ w_j^*`.
    pub fn act(&self, algebra: &AlgebraSpec, g: &GroupElement) -> Kappa {
        let c = (&algebra.chi(self.i, g) * &algebra.chi(self.j, g)).inv().expect("characters are units");
        Kappa { element: algebra.group_act(g, &self.element).scale(&c), i: self.i, j: self.j }
    }

    /// First group element moving `kappa`, if any.
    pub fn g_invariance_failure(&self, algebra: &AlgebraSpec) -> Option<(GroupElement, Kappa)> {
        algebra
            .group_elements()
            .into_iter()
            .map(|g| (g.clone(), self.act(algebra, &g)))
            .find(|(_, moved)| moved != self)
    }

    /// `Psi_2^*(kappa)`: `(w_a, w_b) -> kappa(Psi_2(1 (x) w_a (x) w_b (x) 1))`.
    pub fn pullback(&self, k: usize) -> Cochain2 {
        Cochain2::from_fn(k, |a, b| psi2_value(a, b).map_or_else(SmashElement::zero, |w| self.pair(w)))
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) (x) w{}*^w{}*", self.element, self.i + 1, self.j + 1)
    }
}

/// `[theta_2^* R_2 Psi_2^*(kappa)](w_i (x) w_j)` (zero-based).
pub fn kappa_evaluate(algebra: &AlgebraSpec, kappa: &Kappa, i: usize, j: usize) -> SmashElement {
    let gamma = r2_average(algebra, &kappa.pullback(algebra.k()));
    let e = algebra.identity();
    theta2_extend(algebra, &gamma, &algebra.w(i), &e, &algebra.w(j), &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::mu1;
    use crate::hopf::Family;

    fn setup() -> (crate::hopf::HopfAction, AlgebraSpec) {
        let action = Family::Motivational { n: 2 }.action().unwrap();
        let a = action.algebra().clone();
        (action, a)
    }

    #[test]
    fn mu1_restriction_is_fixed_by_averaging() {
        let (action, a) = setup();
        let gamma = Cochain2::from_fn(3, |i, j| mu1(&action, &a.w(i), &a.w(j)));
        assert!(!gamma.is_zero());
        assert!(gamma.is_g_invariant(&a));
        assert_eq!(r2_average(&a, &gamma), gamma);
    }

    #[test]
    fn averaging_w1_cancels() {
        // (g.gamma)(w1, w2) = chi_2(g)^{-1} w1 and chi_2 is nontrivial
        let (_, a) = setup();
        let mut gamma = Cochain2::zero(3);
        gamma.set(0, 1, a.w(0));
        let avg = r2_average(&a, &gamma);
        assert!(avg.get(0, 1).is_zero());
        assert!(avg.is_g_invariant(&a));
        assert_eq!(r2_average(&a, &avg), avg);
    }

    #[test]
    fn theta2_examples() {
        let (action, a) = setup();
        let gamma = Cochain2::from_fn(3, |i, j| mu1(&action, &a.w(i), &a.w(j)));
        let e = a.identity();
        assert_eq!(theta2_extend(&a, &gamma, &a.w(0), &e, &a.w(1), &e), *gamma.get(0, 1));
        let (s1, s2) = (a.generator(0), a.generator(1));
        let lhs = theta2_extend(&a, &gamma, &a.w(0), &s1, &a.w(1), &s2);
        let rhs = a.mul(gamma.get(0, 1), &a.group_as_element(&a.group_mul(&s1, &s2)));
        assert_eq!(lhs, rhs);
        assert!(theta2_extend(&a, &Cochain2::zero(3), &a.w(0), &s1, &a.w(1), &s2).is_zero());
    }

    #[test]
    fn evaluation_table() {
        let (action, a) = setup();
        let el = mu1(&action, &a.w(0), &a.w(1));
        let kappa = Kappa::new(&a, el.clone(), 0, 1).unwrap();
        assert_eq!(kappa_evaluate(&a, &kappa, 0, 1), el);
        assert!(kappa_evaluate(&a, &kappa, 0, 2).is_zero());
        let zero = Kappa::new(&a, SmashElement::zero(), 0, 1).unwrap();
        assert!(kappa_evaluate(&a, &zero, 0, 1).is_zero());
        assert!(kappa.g_invariance_failure(&a).is_none());
    }

    #[test]
    fn kappa_form_validation() {
        let (_, a) = setup();
        assert!(Kappa::new(&a, a.one(), 1, 1).is_err());
        assert!(Kappa::new(&a, a.one(), 0, 3).is_err());
    }
}
