use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{check_r, cosh_pow, sech2, BundleParam, SpaceDescriptor, SpectralParam};
use crate::specfun::{gamma, hyp2f1, Hyp2F1Args};
use crate::{Error, Result};

/// Which normalisation a bundle resolvent carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum BundleConstant {
    /// `π^{-(dim N+1)/2} Γ((σ-iλ)/2)² / (4Γ(1-iλ))`.
    Printed,
    /// `π^{-(dim N+1)/2} Γ((σ-iλ)/2) Γ((σ-iλ)/2 - τ/2) / (4Γ(1-iλ))`, the NA
    /// constant with `β` replaced by `τ/2`.
    Consistent,
}

// C · (cosh r)^{-σ+iλ} · ₂F₁(a, a - shift; 1 - iλ; sech² r), a = (σ - iλ)/2.
fn na_form(
    x: SpaceDescriptor,
    shift: f64,
    second_gamma_shift: f64,
    lambda: SpectralParam,
    r: f64,
) -> Result<Complex64> {
    check_r(r)?;
    let one = Complex64::new(1.0, 0.0);
    let il = lambda.i_lambda();
    let sigma = x.sigma();
    let a = (Complex64::new(sigma, 0.0) - il) * 0.5;
    let constant = PI.powf(-(f64::from(x.dim_n()) + 1.0) / 2.0) * gamma(a)? * gamma(a - second_gamma_shift)?
        / (gamma(one - il)? * 4.0);
    let f = hyp2f1(Hyp2F1Args::new(a, a - shift, one - il, sech2(r))?)?;
    Ok(constant * cosh_pow(r, il - sigma) * f)
}

/// Resolvent kernel of the shifted Laplacian `L_X + σ²` on a harmonic NA space.
pub fn na_resolvent(x: SpaceDescriptor, lambda: SpectralParam, r: f64) -> Result<Complex64> {
    na_form(x, x.beta(), x.beta(), lambda, r)
}

/// Resolvent kernel on sections of the homogeneous bundle labelled by `τ`,
/// with the printed constant `Γ((σ-iλ)/2)²` (see [`BundleConstant`]).
pub fn bundle_resolvent(x: SpaceDescriptor, tau: BundleParam, lambda: SpectralParam, r: f64) -> Result<Complex64> {
    na_form(x, tau.value() / 2.0, 0.0, lambda, r)
}

/// Bundle resolvent with the `τ`-consistent constant.
pub fn bundle_resolvent_consistent(
    x: SpaceDescriptor,
    tau: BundleParam,
    lambda: SpectralParam,
    r: f64,
) -> Result<Complex64> {
    na_form(x, tau.value() / 2.0, tau.value() / 2.0, lambda, r)
}

/// `W_X(r, ρ) = 2π^{d/2}/Γ(d/2) · cosh^{1-d}(r) · (cosh²ρ - cosh²r)^{(d-2)/2}`
/// with `d = dim Z`.
pub fn transform_kernel(x: SpaceDescriptor, r: f64, rho: f64) -> Result<f64> {
    if !x.is_transform_eligible() {
        return Err(Error::Domain("space is not transform-eligible"));
    }
    if !(r > 0.0 && rho > r && rho.is_finite()) {
        return Err(Error::Domain("transform kernel needs 0 < r < ρ"));
    }
    let d = f64::from(x.dim_z());
    let prefactor = 2.0 * PI.powf(d / 2.0) / gamma(Complex64::new(d / 2.0, 0.0))?.re;
    // cosh²ρ - cosh²r = sinh(ρ + r) sinh(ρ - r)
    let gap = (rho + r).sinh() * (rho - r).sinh();
    Ok(prefactor * r.cosh().powf(1.0 - d) * gap.powf((d - 2.0) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::hyperbolic_resolvent;

    fn lam(re: f64, im: f64) -> SpectralParam {
        SpectralParam::new(Complex64::new(re, im)).unwrap()
    }

    fn x(n: u32, z: u32) -> SpaceDescriptor {
        SpaceDescriptor::new(n, z).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm())
    }

    #[test]
    fn real_hyperbolic_coincidence() {
        for l in [lam(1.0, 0.0), lam(2.0, 0.5), lam(0.0, 3.0)] {
            for r in [0.1, 1.0, 5.0] {
                let a = na_resolvent(x(4, 0), l, r).unwrap();
                let b = hyperbolic_resolvent(5, l, r).unwrap();
                assert!(rel(a, b) < 1e-12);
            }
        }
    }

    #[test]
    fn frozen_na_values() {
        let a = na_resolvent(x(3, 1), lam(2.0, 0.5), 1.0).unwrap();
        let expected = Complex64::new(0.001_272_750_649_919_453_1, 0.018_689_924_319_576_094);
        assert!(rel(a, expected) < 1e-10);
        let b = na_resolvent(x(7, 3), lam(1.0, 0.0), 0.5).unwrap();
        let expected = Complex64::new(0.275_010_394_882_194_86, 0.000_518_278_224_532_111_1);
        assert!(rel(b, expected) < 1e-10);
    }

    #[test]
    fn frozen_bundle_values() {
        let tau0 = BundleParam::new(0.0).unwrap();
        let a = bundle_resolvent(x(3, 1), tau0, lam(0.0, 2.0), 1.0).unwrap();
        assert!(rel(a, Complex64::new(0.004_543_716_137_266_059, 0.0)) < 1e-10);
        let tau2 = BundleParam::new(2.0).unwrap();
        let b = bundle_resolvent(x(7, 3), tau2, lam(1.5, 0.0), 0.8).unwrap();
        let expected = Complex64::new(0.022_420_624_491_515_083, -0.009_572_970_839_566_658);
        assert!(rel(b, expected) < 1e-10);
    }

    #[test]
    fn bundle_constant_ratio() {
        // τ/2 = β: the two normalisations differ by Γ(a)/Γ(a - β).
        let space = x(7, 3);
        let tau = BundleParam::new(2.0 * space.beta()).unwrap();
        let l = lam(1.5, 0.2);
        let r = 0.9;
        let printed = bundle_resolvent(space, tau, l, r).unwrap();
        let na = na_resolvent(space, l, r).unwrap();
        let a = (Complex64::new(space.sigma(), 0.0) - l.i_lambda()) * 0.5;
        let expected = gamma(a).unwrap() / gamma(a - space.beta()).unwrap();
        assert!(rel(printed / na, expected) < 1e-13);
        let consistent = bundle_resolvent_consistent(space, tau, l, r).unwrap();
        assert!(rel(consistent, na) < 1e-15);
    }

    #[test]
    fn kernel_examples() {
        let k = transform_kernel(x(3, 1), 1.0, 2.0).unwrap();
        let expected = 2.0 / (2.0f64.cosh().powi(2) - 1.0f64.cosh().powi(2)).sqrt();
        assert!((k - expected).abs() < 1e-14 * expected);
        assert!((k - 0.582_889_297_278_670_8).abs() < 1e-14);

        for (r, rho) in [(0.3, 0.4), (1.0, 7.0)] {
            let k2 = transform_kernel(x(6, 2), r, rho).unwrap();
            assert!((k2 - 2.0 * PI / f64::cosh(r)).abs() < 1e-13);
        }

        // dim Z = 1: (ρ - r)^{-1/2} blow-up
        let r = 1.0;
        let k_a = transform_kernel(x(3, 1), r, r + 1e-6).unwrap();
        let k_b = transform_kernel(x(3, 1), r, r + 1e-8).unwrap();
        assert!((k_b / k_a - 10.0).abs() < 1e-4);
    }

    #[test]
    fn kernel_errors() {
        assert!(transform_kernel(x(4, 0), 1.0, 2.0).is_err());
        assert!(transform_kernel(x(4, 1), 1.0, 2.0).is_err());
        assert!(transform_kernel(x(3, 1), 2.0, 2.0).is_err());
        assert!(transform_kernel(x(3, 1), 2.0, 1.0).is_err());
    }
}
