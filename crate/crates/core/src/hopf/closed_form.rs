//! The two explicit example families and their closed-form operator values.
//!
//! `Motivational { n }` is the three-variable example over `G = Z_n x Z_n`;
//! `General { k, n, alphas, betas }` is its extension to `k >= 3` variables,
//! where `D_1(w_1) = w_3^{a_1 n} ... w_k^{a_{k-2} n} sigma_2` and
//! `D_2(w_2) = w_3^{b_1 n + 1} w_4^{b_2 n} ... w_k^{b_{k-2} n} sigma_1 sigma_2^{-1}`.
//! The motivational family is the case `k = 3`, `a = b = 0`.

use std::fmt;

use thiserror::Error;

use crate::scalars::{quantum_integer, FieldSpec, Scalar};
use crate::smash::{AlgebraSpec, GroupElement, SmashElement, SmashMonomial};

use super::{HopfAction, SpecialActionSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family parameters out of range: {0}")]
    BadParameters(String),
    #[error("monomial {0} does not belong to this family's algebra")]
    ForeignMonomial(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Motivational { n: u32 },
    General { k: usize, n: u32, alphas: Vec<u32>, betas: Vec<u32> },
}

impl Family {
    /// Parses `motivational-q<n>` or `general-k<k>-n<n>-a<list>-b<list>`, where
    /// a list is `_`-separated and padded with zeros to `k - 2` entries.
    pub fn from_name(name: &str) -> Option<Family> {
        if let Some(n) = name.strip_prefix("motivational-q") {
            let n: u32 = n.parse().ok()?;
            return (n >= 2).then_some(Family::Motivational { n });
        }
        let rest = name.strip_prefix("general-k")?;
        let mut parts = rest.split('-');
        let k: usize = parts.next()?.parse().ok()?;
        let n: u32 = parts.next()?.strip_prefix('n')?.parse().ok()?;
        let list = |s: Option<&str>, p: char| -> Option<Vec<u32>> {
            let body = s?.strip_prefix(p)?;
            body.split('_').map(|x| x.parse().ok()).collect()
        };
        let mut alphas = list(parts.next(), 'a')?;
        let mut betas = list(parts.next(), 'b')?;
        if parts.next().is_some() || k < 3 || n < 2 || alphas.len() > k - 2 || betas.len() > k - 2 {
            return None;
        }
        alphas.resize(k - 2, 0);
        betas.resize(k - 2, 0);
        Some(Family::General { k, n, alphas, betas })
    }

    pub fn n(&self) -> u32 {
        match self {
            Family::Motivational { n } | Family::General { n, .. } => *n,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Family::Motivational { .. } => 3,
            Family::General { k, .. } => *k,
        }
    }

    fn params(&self) -> (Vec<u32>, Vec<u32>) {
        match self {
            Family::Motivational { .. } => (vec![0], vec![0]),
            Family::General { alphas, betas, .. } => (alphas.clone(), betas.clone()),
        }
    }

    fn validate(&self) -> Result<(), FamilyError> {
        let (a, b) = self.params();
        if self.n() < 2 || self.k() < 3 || a.len() != self.k() - 2 || b.len() != self.k() - 2 {
            return Err(FamilyError::BadParameters(self.to_string()));
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec::new(self.n()).expect("n >= 2")
    }

    pub fn q(&self) -> Scalar {
        self.field().zeta_pow(1)
    }

    /// `q_{1j} = q` for `j >= 2`, all other `q_ij = 1`; `chi_1 = (q, 1)`,
    /// `chi_2 = (1, q)`, `chi_j = (q, q)` for `j >= 3`.
    pub fn algebra(&self) -> Result<AlgebraSpec, FamilyError> {
        self.validate()?;
        let (f, k, n) = (self.field(), self.k(), self.n());
        let q = self.q();
        let qi = f.zeta_pow(-1);
        let qmatrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match (i, j) {
                        (0, j) if j > 0 => q.clone(),
                        (i, 0) if i > 0 => qi.clone(),
                        _ => f.one(),
                    })
                    .collect()
            })
            .collect();
        let characters = (0..k)
            .map(|i| match i {
                0 => vec![q.clone(), f.one()],
                1 => vec![f.one(), q.clone()],
                _ => vec![q.clone(), q.clone()],
            })
            .collect();
        AlgebraSpec::new(f, qmatrix, vec![n, n], characters).map_err(|e| FamilyError::BadParameters(e.to_string()))
    }

    pub fn g1(&self, algebra: &AlgebraSpec) -> GroupElement {
        algebra.group_element(&[0, 1]).expect("two generators")
    }

    pub fn g2(&self, algebra: &AlgebraSpec) -> GroupElement {
        algebra.group_element(&[1, -1]).expect("two generators")
    }

    fn p_exponents(&self) -> (Vec<u32>, Vec<u32>) {
        let (a, b) = self.params();
        let n = self.n();
        let mut p1 = vec![0, 0];
        p1.extend(a.iter().map(|x| x * n));
        let mut p2 = vec![0, 0];
        p2.extend(b.iter().map(|x| x * n));
        p2[2] += 1;
        (p1, p2)
    }

    /// `lambda = (q, 1, ..., 1)`, `xi = chi_1^{-1}`, `g_1 = sigma_2`,
    /// `g_2 = sigma_1 sigma_2^{-1}`.
    pub fn special_spec(&self, algebra: &AlgebraSpec) -> SpecialActionSpec {
        let f = self.field();
        let k = self.k();
        let mut lambda = vec![f.one(); k];
        lambda[0] = self.q();
        let (e1, e2) = self.p_exponents();
        let e = algebra.identity();
        let p1 = algebra.monomial_element(&e1, &e);
        let p2 = algebra.monomial_element(&e2, &e);
        let deg2: u32 = e2.iter().sum();
        let mut qp2 = vec![f.one(); k];
        qp2[0] = f.zeta_pow(-(deg2 as i64));
        SpecialActionSpec {
            lambda,
            xi: vec![f.zeta_pow(-1), f.one()],
            p1,
            g1: self.g1(algebra),
            p2,
            g2: self.g2(algebra),
            q_p: [vec![f.one(); k], qp2],
        }
    }

    pub fn action(&self) -> Result<HopfAction, FamilyError> {
        let algebra = self.algebra()?;
        let special = self.special_spec(&algebra);
        HopfAction::new_special(algebra, self.q(), special).map_err(|e| FamilyError::BadParameters(e.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Motivational { n } => write!(f, "motivational-q{n}"),
            Family::General { k, n, alphas, betas } => {
                let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join("_");
                write!(f, "general-k{k}-n{n}-a{}-b{}", join(alphas), join(betas))
            }
        }
    }
}

/// `(sigma(m), D_1(m), D_2(m))` for `m = w_1^{i_1} ... w_k^{i_k} g`, evaluated
/// from the explicit formulas
///
/// ```text
/// sigma(m) = q^{i_1} chi_1(g^{-1}) m
/// D1(m)    = (i_1)_q q^{i_2+...+i_k} chi_1(g^{-1})
///            w_1^{i_1-1} w_2^{i_2} w_3^{i_3+a_1 n} ... w_k^{i_k+a_{k-2} n} sigma_2 g
/// D2(m)    = (i_2)_{q^{-1}} q^{i_1}
///            w_1^{i_1} w_2^{i_2-1} w_3^{i_3+b_1 n+1} w_4^{i_4+b_2 n} ... sigma_1 sigma_2^{-1} g
/// ```
///
/// without using the algebra's multiplication.
pub fn closed_form_oracle(family: &Family, m: &SmashMonomial) -> Result<[SmashElement; 3], FamilyError> {
    family.validate()?;
    let (k, n) = (family.k(), family.n());
    let exps = m.g.exponents();
    if m.alpha.len() != k || exps.len() != 2 || exps.iter().any(|&e| e >= n) {
        return Err(FamilyError::ForeignMonomial(m.to_string()));
    }
    let f = family.field();
    let q = family.q();
    let (a, b) = family.params();
    let i = &m.alpha;
    let chi1_inv = f.zeta_pow(-(exps[0] as i64));
    let group = |d0: i64, d1: i64| GroupElement::from_exponents(&[exps[0] as i64 + d0, exps[1] as i64 + d1], &[n, n]);

    let sigma = SmashElement::from_monomial(m.clone(), &f.zeta_pow(i[0] as i64) * &chi1_inv);

    let d1 = if i[0] == 0 {
        SmashElement::zero()
    } else {
        let rest: u32 = i[1..].iter().sum();
        let c = &(&quantum_integer(i[0], &q) * &f.zeta_pow(rest as i64)) * &chi1_inv;
        let mut alpha: Vec<u32> = i.to_vec();
        alpha[0] -= 1;
        for (j, aj) in a.iter().enumerate() {
            alpha[j + 2] += aj * n;
        }
        SmashElement::from_monomial(SmashMonomial::new(&alpha, group(0, 1)), c)
    };

    let d2 = if i[1] == 0 {
        SmashElement::zero()
    } else {
        let c = &quantum_integer(i[1], &f.zeta_pow(-1)) * &f.zeta_pow(i[0] as i64);
        let mut alpha: Vec<u32> = i.to_vec();
        alpha[1] -= 1;
        alpha[2] += 1;
        for (j, bj) in b.iter().enumerate() {
            alpha[j + 2] += bj * n;
        }
        SmashElement::from_monomial(SmashMonomial::new(&alpha, group(1, -1)), c)
    };

    Ok([sigma, d1, d2])
}
