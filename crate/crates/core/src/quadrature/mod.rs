//! Double-exponential quadrature for finite intervals with endpoint
//! singularities and for semi-infinite intervals with decaying tails.

mod de;
mod semi_infinite;
mod transform;

pub use de::{exp_sinh, tanh_sinh, tanh_sinh_with, Abscissa};
pub use semi_infinite::{integrate_semi_infinite, integrate_semi_infinite_with, Integrand};
pub use transform::{
    integrate_bundle_transform, integrate_transform, transform_integrand, TRANSFORM_T_CAP,
};

use num_complex::Complex64;

/// Smallest relative tolerance the engines accept.
pub const MIN_TOLERANCE: f64 = 1e-13;
/// Default number of level halvings.
pub const DEFAULT_MAX_LEVEL: u32 = 10;

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    /// Estimated relative error of `value`.
    pub error_estimate: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
    /// `true` iff `error_estimate` met the requested tolerance.
    pub converged: bool,
}

impl QuadratureResult {
    /// Sum of two independently computed pieces.
    pub(crate) fn combine(self, other: Self, tol: f64) -> Self {
        let value = self.value + other.value;
        let scale = value.norm().max(f64::MIN_POSITIVE);
        let abs_err = self.error_estimate * self.value.norm() + other.error_estimate * other.value.norm();
        let error_estimate = abs_err / scale;
        Self {
            value,
            error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged && error_estimate <= tol,
        }
    }
}
