//! Identity checks. Each check evaluates both sides of an identity
//! independently and returns an [`IdentityReport`]; evaluation failures become
//! skipped reports carrying the reason.

mod lemmas;
mod report;
mod resolvents;
#[cfg(feature = "serde")]
mod serde_impls;
mod suite;

pub use lemmas::{check_key_lemma, check_lemma31, check_lemma32, KeyLemmaVariant};
pub use report::{relative_error, IdentityReport, ParamValue, Status, ABSOLUTE_FALLBACK};
pub use resolvents::{
    check_bundle_transform, check_closed_form, check_jacobi_ode, check_quadratic_transform, check_recurrence,
    check_recurrence_with, check_transform, OdeTarget, RecurrencePath,
};
pub use suite::{
    run_suite, sort_reports, standard_lambdas, summarize, Case, Check, CheckSpecError, GridConfig, GridGroup, OdeSpec,
    Summary, IDENTITIES, STANDARD_RADII, TRANSFORM_RADII, TRANSFORM_SPACES,
};

/// Quadrature tolerance for a check judged at `tol`: a hundredth of it,
/// clamped to `[1e-13, 1e-10]`.
pub fn quad_tolerance(tol: f64) -> f64 {
    (tol / 100.0).clamp(crate::quadrature::MIN_TOLERANCE, 1e-10)
}
