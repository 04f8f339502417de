//! Hochschild-cohomological checks on the first-order term `mu_1`.

mod certificate;
mod cochain;
mod cocycle;
mod koszul;

pub use certificate::{
    canonical_kappa, cg_failure, cg_membership, kappa_with_element, nontriviality_report, verify_identification,
    verify_mu1_identification, Certificate, CertificateError, Verdict, COCHAIN_CONVENTION,
};
pub use cochain::{kappa_evaluate, r2_average, theta2_extend, Cochain2, CochainError, Kappa};
pub use cocycle::{cocycle_check, cocycle_check_mu1};
pub use koszul::{
    apply_d, augmentation, check_complex, is_koszul_coboundary, koszul_d, psi2_value, KoszulChain, KoszulError,
    WedgeIndex,
};
