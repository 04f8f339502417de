//! Nontriviality certificate for deformations built from a diagonal action.

use std::fmt;

use thiserror::Error;

use crate::hopf::{HopfAction, SpecialActionSpec};
use crate::report::{CheckReport, Witness};
use crate::smash::{AlgebraSpec, GroupElement, SmashElement};

use super::cochain::{kappa_evaluate, CochainError, Kappa};
use super::cocycle::cocycle_check_mu1;
use crate::deformation::mu1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("the certificate needs a diagonal (special) action")]
    NotSpecial,
    #[error("the certificate needs k >= 2, got {0}")]
    TooFewVariables(usize),
    #[error("P{0} must be supported on w3..wk")]
    Support(usize),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// `prod_j q_ij^{gamma_j} = chi_i(g)` or `gamma_i = -1`, for every `i`.
///
/// Entries below `-1` are outside the domain and make the test false.
pub fn cg_membership(algebra: &AlgebraSpec, gamma: &[i64], g: &GroupElement) -> bool {
    cg_failure(algebra, gamma, g).is_none()
}

/// The first zero-based `i` where the condition fails.
pub fn cg_failure(algebra: &AlgebraSpec, gamma: &[i64], g: &GroupElement) -> Option<usize> {
    if gamma.len() != algebra.k() || gamma.iter().any(|&x| x < -1) {
        return Some(0);
    }
    (0..algebra.k()).find(|&i| {
        if gamma[i] == -1 {
            return false;
        }
        let lhs = gamma
            .iter()
            .enumerate()
            .fold(algebra.field().one(), |acc, (j, &e)| &acc * &algebra.q(i, j).pow(e).expect("q entries are units"));
        lhs != algebra.chi(i, g)
    })
}

fn special(action: &HopfAction) -> Result<&SpecialActionSpec, CertificateError> {
    let s = action.special().ok_or(CertificateError::NotSpecial)?;
    let k = action.algebra().k();
    if k < 2 {
        return Err(CertificateError::TooFewVariables(k));
    }
    for (i, p) in [&s.p1, &s.p2].into_iter().enumerate() {
        if p.terms().iter().any(|(m, _)| m.alpha[0] != 0 || m.alpha[1] != 0) {
            return Err(CertificateError::Support(i + 1));
        }
    }
    Ok(s)
}

/// `P_1 g_1 P_2 g_2 (x) w_1^* ^ w_2^*`.
pub fn canonical_kappa(action: &HopfAction) -> Result<Kappa, CertificateError> {
    let s = special(action)?;
    let a = action.algebra();
    let element = a.product([&s.p1, &a.group_as_element(&s.g1), &s.p2, &a.group_as_element(&s.g2)]);
    Ok(Kappa::new(a, element, 0, 1)?)
}

/// `kappa_evaluate(kappa, i, j) = mu_1(w_i, w_j)` for all `i < j`.
pub fn verify_identification(action: &HopfAction, kappa: &Kappa) -> CheckReport {
    let a = action.algebra();
    let mut r = CheckReport::new("mu1 identification");
    let k = a.k();
    let witness = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).find_map(|(i, j)| {
        let lhs = kappa_evaluate(a, kappa, i, j);
        let rhs = mu1(action, &a.w(i), &a.w(j));
        (lhs != rhs).then(|| Witness::new(format!("(w{}, w{})", i + 1, j + 1), lhs, rhs))
    });
    r.record("MU1_IDENTIFICATION", witness);
    r
}

pub fn verify_mu1_identification(action: &HopfAction) -> Result<CheckReport, CertificateError> {
    Ok(verify_identification(action, &canonical_kappa(action)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Nontrivial,
    NoCertificate,
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Nontrivial => "nontrivial",
            Verdict::NoCertificate => "no certificate",
            Verdict::Failed => "certificate failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub kappa: Kappa,
    pub report: CheckReport,
    pub verdict: Verdict,
}

pub const COCHAIN_CONVENTION: &str = "(g.f)(a (x) b) = g(f(g^-1(a) (x) g^-1(b))); g(w_i^*) = chi_i(g)^-1 w_i^*";

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "convention: {COCHAIN_CONVENTION}")?;
        writeln!(f, "kappa: {}", self.kappa)?;
        write!(f, "{}", self.report)?;
        writeln!(f, "verdict: {}", self.verdict)
    }
}

/// Sections (a) to (e): `kappa != 0`, `G`-invariance of `kappa`, `C_g`
/// membership of `alpha - beta` for `g = g_1 g_2`, the `mu_1`
/// identification, and the cocycle identity for `mu_1` up to `degree_bound`.
pub fn nontriviality_report(action: &HopfAction, degree_bound: u32) -> Result<Certificate, CertificateError> {
    let s = special(action)?;
    let a = action.algebra();
    let kappa = canonical_kappa(action)?;
    let mut report = CheckReport::new("nontriviality certificate");
    if kappa.element.is_zero() {
        report.record_note("(a) KAPPA_NONZERO", false, "kappa = 0, certificate inapplicable");
        return Ok(Certificate { kappa, report, verdict: Verdict::NoCertificate });
    }
    report.record("(a) KAPPA_NONZERO", None);

    let moved = kappa.g_invariance_failure(a).map(|(g, moved)| Witness::new(format!("g={g}"), moved, &kappa));
    report.record("(b) G_INVARIANT", moved);

    let g = a.group_mul(&s.g1, &s.g2);
    let cg = s.p1.terms().iter().flat_map(|(r, _)| s.p2.terms().iter().map(move |(d, _)| (r, d))).find_map(|(r, d)| {
        let gamma: Vec<i64> =
            (0..a.k()).map(|i| r.alpha[i] as i64 + d.alpha[i] as i64 - if i < 2 { 1 } else { 0 }).collect();
        cg_failure(a, &gamma, &g).map(|i| {
            let lhs = (0..a.k()).fold(a.field().one(), |acc, j| &acc * &a.q(i, j).pow(gamma[j]).expect("unit"));
            Witness::new(format!("gamma={gamma:?} g={g} i={}", i + 1), lhs, a.chi(i, &g))
        })
    });
    report.record("(c) CG_MEMBERSHIP", cg);

    let ident = verify_identification(action, &kappa);
    report.record("(d) MU1_IDENTIFICATION", ident.entries[0].witness.clone());

    let cocycle = cocycle_check_mu1(action, degree_bound);
    report.record(format!("(e) MU1_COCYCLE |alpha| <= {degree_bound}"), cocycle.entries[0].witness.clone());

    let verdict = if report.passed() { Verdict::Nontrivial } else { Verdict::Failed };
    Ok(Certificate { kappa, report, verdict })
}

/// `kappa` with its element replaced; used to build mutants.
pub fn kappa_with_element(action: &HopfAction, element: SmashElement) -> Result<Kappa, CertificateError> {
    Ok(Kappa::new(action.algebra(), element, 0, 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::koszul::is_koszul_coboundary;
    use crate::hopf::Family;

    #[test]
    fn cg_examples() {
        let a = Family::Motivational { n: 2 }.algebra().unwrap();
        let s1 = a.generator(0);
        assert!(cg_membership(&a, &[-1, -1, 1], &s1));
        assert!(!cg_membership(&a, &[0, -1, 1], &s1));
        assert_eq!(cg_failure(&a, &[0, -1, 1], &s1), Some(0));
        for g in a.group_elements() {
            assert!(cg_membership(&a, &[-1, -1, -1], &g));
        }
        assert!(!cg_membership(&a, &[-2, 0, 0], &s1));
    }

    #[test]
    fn motivational_certificate() {
        for n in [2, 3] {
            let action = Family::Motivational { n }.action().unwrap();
            let c = nontriviality_report(&action, 2).unwrap();
            assert_eq!(c.verdict, Verdict::Nontrivial, "{c}");
            let text = c.to_string();
            assert!(text.starts_with("convention: "));
            assert!(text.ends_with("verdict: nontrivial\n"));
            assert!(!is_koszul_coboundary(action.algebra(), &c.kappa));
        }
    }

    #[test]
    fn general_family_certificate() {
        let action = Family::from_name("general-k4-n2-a1-b1").unwrap().action().unwrap();
        let c = nontriviality_report(&action, 1).unwrap();
        assert_eq!(c.verdict, Verdict::Nontrivial, "{c}");
        assert!(!is_koszul_coboundary(action.algebra(), &c.kappa));
    }

    #[test]
    fn identity_g2_breaks_identification() {
        let action = Family::Motivational { n: 2 }.action().unwrap();
        let a = action.algebra();
        let s = action.special().unwrap();
        let element = a.product([&s.p1, &a.group_as_element(&s.g1), &s.p2]);
        let kappa = kappa_with_element(&action, element).unwrap();
        let r = verify_identification(&action, &kappa);
        let w = r.entry("MU1_IDENTIFICATION").unwrap().witness.clone().unwrap();
        assert_eq!(w.input, "(w1, w2)");
        assert!(verify_mu1_identification(&action).unwrap().passed());
    }

    #[test]
    fn zero_p_gives_no_certificate() {
        let family = Family::Motivational { n: 2 };
        let algebra = family.algebra().unwrap();
        let mut spec = family.special_spec(&algebra);
        spec.p2 = SmashElement::zero();
        let action = HopfAction::new_special(algebra, family.q(), spec).unwrap();
        let c = nontriviality_report(&action, 1).unwrap();
        assert_eq!(c.verdict, Verdict::NoCertificate);
    }

    #[test]
    fn precondition_violations() {
        let family = Family::Motivational { n: 2 };
        let algebra = family.algebra().unwrap();
        let mut spec = family.special_spec(&algebra);
        spec.p1 = algebra.w(0);
        let action = HopfAction::new_special(algebra.clone(), family.q(), spec).unwrap();
        assert_eq!(nontriviality_report(&action, 1).unwrap_err(), CertificateError::Support(1));
        let general =
            HopfAction::new_general(algebra.clone(), family.q(), family.special_spec(&algebra).to_general(&algebra))
                .unwrap();
        assert_eq!(nontriviality_report(&general, 1).unwrap_err(), CertificateError::NotSpecial);
    }
}
