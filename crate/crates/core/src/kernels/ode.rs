use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

/// `h = max(1e-4, 1e-3·r)`.
pub fn default_fd_step(r: f64) -> f64 {
    (1e-3 * r).max(1e-4)
}

/// Value and first two derivatives from 5-point central differences with one
/// Richardson step (`h` and `h/2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteDifference {
    pub value: Complex64,
    pub first: Complex64,
    pub second: Complex64,
}

impl FiniteDifference {
    /// Samples `f` on `[r - 2h, r + 2h]`.
    pub fn at<F>(f: F, r: f64, h: f64) -> Result<Self>
    where
        F: Fn(f64) -> Result<Complex64>,
    {
        if !(h > 0.0) || !(r - 2.0 * h > 0.0) || !r.is_finite() {
            return Err(Error::Domain("finite-difference stencil leaves (0, ∞)"));
        }
        let centre = f(r)?;
        let stencil = |step: f64| -> Result<(Complex64, Complex64)> {
            let m2 = f(r - 2.0 * step)?;
            let m1 = f(r - step)?;
            let p1 = f(r + step)?;
            let p2 = f(r + 2.0 * step)?;
            let first = (m2 - m1 * 8.0 + p1 * 8.0 - p2) / (12.0 * step);
            let second = (-m2 + m1 * 16.0 - centre * 30.0 + p1 * 16.0 - p2) / (12.0 * step * step);
            Ok((first, second))
        };
        let (d1_h, d2_h) = stencil(h)?;
        let (d1_half, d2_half) = stencil(h / 2.0)?;
        Ok(Self {
            value: centre,
            first: d1_half + (d1_half - d1_h) / 15.0,
            second: d2_half + (d2_half - d2_h) / 15.0,
        })
    }
}

/// Normalised residual of the radial Jacobi equation
/// `f'' + (dim_n coth r + dim_z tanh r) f' + (σ² + λ²) f = 0`, `σ = (dim_n + dim_z)/2`,
/// divided by `max(|f|, |f'|, |f''|)`.
pub fn jacobi_ode_residual<F>(evaluator: F, dim_n: u32, dim_z: u32, lambda: Complex64, r: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let d = FiniteDifference::at(evaluator, r, h)?;
    let dn = f64::from(dim_n);
    let dz = f64::from(dim_z);
    let sigma = (dn + dz) / 2.0;
    let drift = dn / r.tanh() + dz * r.tanh();
    let residual = d.second + d.first * drift + d.value * (lambda * lambda + sigma * sigma);
    let scale = d.value.norm().max(d.first.norm()).max(d.second.norm());
    if scale == 0.0 {
        return Ok(residual.norm());
    }
    Ok(residual.norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::odd_resolvent;
    use crate::kernels::spherical_function;

    #[test]
    fn green_kernel_of_h3() {
        let lambda = Complex64::new(1.0, 0.0);
        let res = jacobi_ode_residual(|r| odd_resolvent(1, lambda, r), 2, 0, lambda, 1.0, default_fd_step(1.0)).unwrap();
        assert!(res < 1e-4, "{res}");
    }

    #[test]
    fn spherical_function_of_h3() {
        let lambda = Complex64::new(2.0, 0.0);
        let res =
            jacobi_ode_residual(|r| spherical_function(3, lambda, r), 2, 0, lambda, 0.8, default_fd_step(0.8)).unwrap();
        assert!(res < 1e-4, "{res}");
    }

    #[test]
    fn constants_when_zeroth_order_term_vanishes() {
        let res = jacobi_ode_residual(|_| Ok(Complex64::new(1.0, 0.0)), 2, 0, Complex64::new(0.0, 1.0), 1.0, 1e-3)
            .unwrap();
        assert!(res < 1e-10);
    }

    #[test]
    fn stencil_must_stay_positive() {
        let f = |_| Ok(Complex64::new(1.0, 0.0));
        assert!(jacobi_ode_residual(f, 2, 0, Complex64::new(1.0, 0.0), 0.1, 0.05).is_err());
        assert!(jacobi_ode_residual(f, 2, 0, Complex64::new(1.0, 0.0), 0.1, 0.0).is_err());
    }

    #[test]
    fn derivatives_of_exponential() {
        let d = FiniteDifference::at(|x| Ok(Complex64::new(x.exp(), 0.0)), 1.0, 1e-2).unwrap();
        let e = 1.0f64.exp();
        assert!((d.first.re - e).abs() < 1e-11 && (d.second.re - e).abs() < 1e-9);
    }
}
