use num_complex::Complex64;

use super::{exp_sinh, tanh_sinh_with, QuadratureResult, DEFAULT_MAX_LEVEL, MIN_TOLERANCE};
use crate::{Error, Result};

/// An integrand on `(lower, ∞)` behaving like `(y - lower)^alpha` at the
/// lower endpoint.
///
/// The evaluator receives the offset `u = y - lower` rather than `y`, so that
/// factors such as `(y - lower)^{μ-1}` can be formed without cancellation.
pub struct Integrand<F> {
    lower: f64,
    alpha: f64,
    evaluator: F,
}

impl<F> Integrand<F>
where
    F: Fn(f64) -> Result<Complex64>,
{
    pub fn new(lower: f64, alpha: f64, evaluator: F) -> Result<Self> {
        if !lower.is_finite() {
            return Err(Error::Domain("lower endpoint must be finite"));
        }
        if !(alpha > -1.0) {
            return Err(Error::Domain("endpoint exponent must exceed -1"));
        }
        Ok(Self { lower, alpha, evaluator })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Evaluates at offset `u` from the lower endpoint.
    pub fn eval(&self, u: f64) -> Result<Complex64> {
        (self.evaluator)(u)
    }
}

/// `∫_{lower}^{∞} f` to relative tolerance `tol`.
///
/// Fails with [`Error::NonConvergence`] when the default level budget is
/// exhausted.
pub fn integrate_semi_infinite<F>(f: &Integrand<F>, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let result = integrate_semi_infinite_with(f, tol, DEFAULT_MAX_LEVEL)?;
    if !result.converged {
        return Err(Error::NonConvergence { estimate: result.error_estimate });
    }
    Ok(result)
}

/// Same as [`integrate_semi_infinite`] with an explicit level budget; an
/// unconverged result is returned with `converged == false`.
///
/// The interval is split at `lower + Δ`, `Δ = max(1, |lower|)`: tanh-sinh on
/// the (possibly singular) finite piece, exp-sinh on the tail.
pub fn integrate_semi_infinite_with<F>(f: &Integrand<F>, tol: f64, max_level: u32) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(tol >= MIN_TOLERANCE) {
        return Err(Error::Domain("quadrature tolerance below 1e-13"));
    }
    let delta = f.lower.abs().max(1.0);
    let head = tanh_sinh_with(0.0, delta, tol, max_level, |p| f.eval(p.from_lower))?;
    let tail = exp_sinh(delta, tol, max_level, |p| f.eval(delta + p.from_lower))?;
    Ok(head.combine(tail, tol))
}
