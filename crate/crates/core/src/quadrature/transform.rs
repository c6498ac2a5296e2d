use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{tanh_sinh, QuadratureResult, MIN_TOLERANCE};
use crate::closedform::OddResolvent;
use crate::kernels::{BundleParam, SpaceDescriptor, SpectralParam};
use crate::specfun::gamma;
use crate::{Error, Result};

/// Hard cap on the substituted variable `t`.
pub const TRANSFORM_T_CAP: f64 = 60.0;

const QUIET_PANELS: u32 = 3;

/// The transform integrand after the substitution `cosh ρ = cosh r · cosh t`:
/// `2π^{d/2}/Γ(d/2) · sinh^{d-1}(t) · R_Y(λ, ρ(t))`, `d = dim Z`, `dim Y = 2σ + 1`.
///
/// The weight `W_X(r, ρ) sinh ρ dρ` becomes `2π^{d/2}/Γ(d/2) sinh^{d-1}(t) dt`,
/// which is regular at `t = 0` for every `d >= 1`.
pub fn transform_integrand(
    x: SpaceDescriptor,
    lambda: SpectralParam,
    r: f64,
) -> Result<impl Fn(f64) -> Result<Complex64>> {
    let m = x.transform_order()?;
    let d = f64::from(x.dim_z());
    let setup = Substituted::new(d - 1.0, kernel_prefactor(d)?, m, lambda, r)?;
    Ok(move |t: f64| setup.eval(t))
}

/// `∫_r^∞ W_X(r, ρ) R_Y(λ, ρ) sinh ρ dρ` for a transform-eligible `X`, with `Y`
/// the real hyperbolic space of dimension `dim N + dim Z + 1`.
pub fn integrate_transform(x: SpaceDescriptor, lambda: SpectralParam, r: f64, tol: f64) -> Result<QuadratureResult> {
    let m = x.transform_order()?;
    let d = f64::from(x.dim_z());
    Substituted::new(d - 1.0, kernel_prefactor(d)?, m, lambda, r)?.integrate(tol)
}

/// `∫_r^∞ W_{X,τ}(r, ρ) R_Y(λ, ρ) sinh ρ dρ` with
/// `W_{X,τ}(r, ρ) = 2π^{(τ+1)/2}/Γ((τ+1)/2) · cosh^{-τ}(r) · (cosh²ρ - cosh²r)^{(τ-1)/2}`
/// and `dim Y = 2σ + 1`.
pub fn integrate_bundle_transform(
    x: SpaceDescriptor,
    tau: BundleParam,
    lambda: SpectralParam,
    r: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(x.dim_n() + x.dim_z()).is_multiple_of(2) {
        return Err(Error::Domain("bundle transform needs integral σ"));
    }
    let tau = tau.value();
    if tau <= 0.0 {
        return Err(Error::Domain("bundle transform needs τ > 0"));
    }
    let m = (x.dim_n() + x.dim_z()) / 2;
    Substituted::new(tau, kernel_prefactor(tau + 1.0)?, m, lambda, r)?.integrate(tol)
}

// 2π^{d/2} / Γ(d/2)
fn kernel_prefactor(d: f64) -> Result<f64> {
    Ok(2.0 * PI.powf(d / 2.0) / gamma(Complex64::new(d / 2.0, 0.0))?.re)
}

struct Substituted {
    power: f64,
    prefactor: f64,
    cosh_r: f64,
    sinh_r: f64,
    resolvent: OddResolvent,
}

impl Substituted {
    fn new(power: f64, prefactor: f64, m: u32, lambda: SpectralParam, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Domain("transform needs r > 0"));
        }
        Ok(Self {
            power,
            prefactor,
            cosh_r: r.cosh(),
            sinh_r: r.sinh(),
            resolvent: OddResolvent::new(m, lambda.value())?,
        })
    }

    fn eval(&self, t: f64) -> Result<Complex64> {
        if !(t >= 0.0) {
            return Err(Error::Domain("substituted variable must be nonnegative"));
        }
        let sinh_t = t.sinh();
        // cosh²ρ - 1 = cosh²r sinh²t + sinh²r
        let sinh_rho = (self.cosh_r * self.cosh_r * sinh_t * sinh_t + self.sinh_r * self.sinh_r).sqrt();
        let rho = (self.cosh_r * t.cosh() + sinh_rho).ln();
        let weight = if self.power == 0.0 { 1.0 } else { sinh_t.powf(self.power) };
        Ok(self.resolvent.eval(rho)? * (weight * self.prefactor))
    }

    // Panels of width min(1, r·2^k) from t = 0, each integrated with tanh-sinh,
    // until three consecutive panels are below tol relative to the running sum.
    fn integrate(&self, tol: f64) -> Result<QuadratureResult> {
        if !(tol >= MIN_TOLERANCE) {
            return Err(Error::Domain("quadrature tolerance below 1e-13"));
        }
        let r = (self.sinh_r).asinh();
        let mut width = r.clamp(0.05, 1.0);
        let mut start = 0.0;
        let mut total = Complex64::new(0.0, 0.0);
        let mut abs_err = 0.0;
        let mut evaluations = 0;
        let mut quiet = 0;
        while start < TRANSFORM_T_CAP {
            let end = (start + width).min(TRANSFORM_T_CAP);
            let panel = tanh_sinh(start, end, tol, |p| {
                let t = if start == 0.0 { p.from_lower } else { p.x };
                self.eval(t)
            })?;
            evaluations += panel.evaluations;
            if !panel.converged {
                return Err(Error::NonConvergence { estimate: panel.error_estimate });
            }
            total += panel.value;
            abs_err += panel.error_estimate * panel.value.norm();
            if panel.value.norm() <= tol * total.norm() {
                quiet += 1;
                if quiet >= QUIET_PANELS {
                    let scale = total.norm();
                    let error_estimate = if scale > 0.0 { abs_err / scale } else { 0.0 };
                    return Ok(QuadratureResult { value: total, error_estimate, evaluations, converged: true });
                }
            } else {
                quiet = 0;
            }
            start = end;
            width = (2.0 * width).min(1.0);
        }
        Err(Error::NonConvergence { estimate: f64::INFINITY })
    }
}
