use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::quadrature::tanh_sinh;
use crate::specfun::{gamma, hyp2f1, Hyp2F1Args, MAX_SERIES_TERMS};
use crate::{Error, Result};

/// Largest distance accepted by [`spherical_function`].
pub const SPHERICAL_R_MAX: f64 = 12.0;

// Above this value of tanh² r the Pfaff-mapped series is replaced by the
// Laplace-type integral.
const SERIES_TANH2_MAX: f64 = 0.9;
const INTEGRAL_TOL: f64 = 1e-12;
// Near zeros of φ the integral cancels and the estimate sits on the roundoff
// floor; such results are still accepted up to this estimate.
const INTEGRAL_ACCEPT: f64 = 1e-9;

/// Normalised spherical function of `H^n`:
/// `₂F₁(((n-1)/2 - iλ)/2, ((n-1)/2 + iλ)/2; n/2; -sinh² r)`, equal to 1 at `r = 0`.
///
/// For larger `r` the integral
/// `Γ(n/2)/(√π Γ((n-1)/2)) ∫₀^π (cosh r - sinh r cos θ)^{iλ-ρ} sin^{n-2}θ dθ`,
/// `ρ = (n-1)/2`, is used instead of the series.
pub fn spherical_function(n: u32, lambda: Complex64, r: f64) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::Domain("spherical functions need n >= 2"));
    }
    if !(r >= 0.0) {
        return Err(Error::Domain("spherical functions need r >= 0"));
    }
    if r > SPHERICAL_R_MAX {
        return Err(Error::Convergence { terms: MAX_SERIES_TERMS });
    }
    if r == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let nf = f64::from(n);
    let rho = (nf - 1.0) / 2.0;
    let il = Complex64::new(-lambda.im, lambda.re);
    if r.tanh().powi(2) <= SERIES_TANH2_MAX {
        let a = (Complex64::new(rho, 0.0) - il) * 0.5;
        let b = (Complex64::new(rho, 0.0) + il) * 0.5;
        let z = -r.sinh().powi(2);
        return hyp2f1(Hyp2F1Args::new(a, b, Complex64::new(nf / 2.0, 0.0), z)?);
    }
    laplace_integral(nf, il - rho, r)
}

fn laplace_integral(nf: f64, exponent: Complex64, r: f64) -> Result<Complex64> {
    let norm = gamma(Complex64::new(nf / 2.0, 0.0))?.re / (PI.sqrt() * gamma(Complex64::new((nf - 1.0) / 2.0, 0.0))?.re);
    let e_minus = (-r).exp();
    let two_sinh = 2.0 * r.sinh();
    let power = nf - 2.0;
    let result = tanh_sinh(0.0, PI, INTEGRAL_TOL, |p| {
        // cosh r - sinh r cos θ = e^{-r} + 2 sinh r sin²(θ/2)
        let half_sin = if p.from_lower <= p.to_upper { (p.from_lower / 2.0).sin() } else { (p.to_upper / 2.0).cos() };
        let base = e_minus + two_sinh * half_sin * half_sin;
        let sin_theta = p.from_lower.min(p.to_upper).sin();
        let weight = if power == 0.0 { 1.0 } else { sin_theta.powf(power) };
        Ok((exponent * base.ln()).exp() * weight)
    })?;
    if !(result.error_estimate <= INTEGRAL_ACCEPT) {
        return Err(Error::NonConvergence { estimate: result.error_estimate });
    }
    Ok(result.value * norm)
}
