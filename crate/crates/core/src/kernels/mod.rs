//! Space descriptors and radial kernel formulas.
//!
//! Every resolvent here is a function of the geodesic distance `r` only. A
//! harmonic NA space enters solely through `(dim N, dim Z)`; `dim Z = 0` is the
//! formal real hyperbolic case `H^{dim N + 1}` with `β = -1/2`.

mod hyperbolic;
mod na;
mod ode;
mod spherical;

pub use hyperbolic::{hyperbolic_resolvent, hyperbolic_resolvent_half};
pub use na::{bundle_resolvent, bundle_resolvent_consistent, na_resolvent, transform_kernel, BundleConstant};
pub use ode::{default_fd_step, jacobi_ode_residual, FiniteDifference};
pub use spherical::{spherical_function, SPHERICAL_R_MAX};

use num_complex::Complex64;

use crate::{Error, Result};

/// Smallest distance at which resolvents are evaluated by default.
pub const R_MIN: f64 = 0.05;
/// Smallest admissible `|λ|`.
pub const LAMBDA_MIN: f64 = 1e-8;

/// A harmonic NA space described by `dim N` (center included) and `dim Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "(u32, u32)", into = "(u32, u32)"))]
pub struct SpaceDescriptor {
    dim_n: u32,
    dim_z: u32,
}

impl SpaceDescriptor {
    pub fn new(dim_n: u32, dim_z: u32) -> Result<Self> {
        if dim_n == 0 {
            return Err(Error::Domain("dim N must be positive"));
        }
        if dim_z >= 1 && dim_n <= dim_z {
            return Err(Error::Domain("dim N must exceed dim Z"));
        }
        Ok(Self { dim_n, dim_z })
    }

    /// The real hyperbolic space `H^n` as a formal descriptor `(n - 1, 0)`.
    pub fn real_hyperbolic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("real hyperbolic descriptor needs n >= 2"));
        }
        Self::new(n - 1, 0)
    }

    pub fn dim_n(&self) -> u32 {
        self.dim_n
    }

    pub fn dim_z(&self) -> u32 {
        self.dim_z
    }

    /// `σ = (dim N + dim Z) / 2`.
    pub fn sigma(&self) -> f64 {
        f64::from(self.dim_n + self.dim_z) / 2.0
    }

    /// `β = (dim Z - 1) / 2`.
    pub fn beta(&self) -> f64 {
        (f64::from(self.dim_z) - 1.0) / 2.0
    }

    /// `dim N + dim Z` even and `dim Z >= 1`.
    pub fn is_transform_eligible(&self) -> bool {
        self.dim_z >= 1 && (self.dim_n + self.dim_z).is_multiple_of(2)
    }

    /// Integer `σ` for transform-eligible spaces; the partner hyperbolic space
    /// has dimension `2σ + 1`.
    pub fn transform_order(&self) -> Result<u32> {
        if !self.is_transform_eligible() {
            return Err(Error::Domain("space is not transform-eligible"));
        }
        Ok((self.dim_n + self.dim_z) / 2)
    }
}

impl TryFrom<(u32, u32)> for SpaceDescriptor {
    type Error = Error;

    fn try_from((dim_n, dim_z): (u32, u32)) -> Result<Self> {
        Self::new(dim_n, dim_z)
    }
}

impl From<SpaceDescriptor> for (u32, u32) {
    fn from(x: SpaceDescriptor) -> Self {
        (x.dim_n, x.dim_z)
    }
}

/// A spectral parameter with `Im λ >= 0` and `|λ| >= LAMBDA_MIN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam(Complex64);

impl SpectralParam {
    pub fn new(lambda: Complex64) -> Result<Self> {
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(Error::Domain("λ must be finite"));
        }
        if lambda.im < 0.0 {
            return Err(Error::Domain("Im λ must be nonnegative"));
        }
        if lambda.norm() < LAMBDA_MIN {
            return Err(Error::Pole("λ too close to 0"));
        }
        Ok(Self(lambda))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    /// `iλ`.
    pub fn i_lambda(&self) -> Complex64 {
        Complex64::new(-self.0.im, self.0.re)
    }
}

impl TryFrom<Complex64> for SpectralParam {
    type Error = Error;

    fn try_from(lambda: Complex64) -> Result<Self> {
        Self::new(lambda)
    }
}

/// Bundle parameter `τ >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BundleParam(f64);

impl BundleParam {
    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::Domain("τ must be finite and nonnegative"));
        }
        Ok(Self(tau))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

fn check_r(r: f64) -> Result<()> {
    if !r.is_finite() || r < R_MIN {
        return Err(Error::Domain("r below the certified minimum distance"));
    }
    Ok(())
}

/// `(cosh r)^s` without overflow for large `r`.
pub(crate) fn cosh_pow(r: f64, s: Complex64) -> Complex64 {
    #[allow(unused_imports)] // shadowed by inherent methods when std is linked
    use num_traits::Float;
    let ln_cosh = r.abs() + (-2.0 * r.abs()).exp().ln_1p() - core::f64::consts::LN_2;
    (s * ln_cosh).exp()
}

/// `sech² r`.
pub(crate) fn sech2(r: f64) -> f64 {
    #[allow(unused_imports)] // shadowed by inherent methods when std is linked
    use num_traits::Float;
    let c = r.cosh();
    1.0 / (c * c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_invariants() {
        let x = SpaceDescriptor::new(3, 1).unwrap();
        assert_eq!(x.sigma(), 2.0);
        assert_eq!(x.beta(), 0.0);
        assert!(x.is_transform_eligible());
        assert_eq!(x.transform_order().unwrap(), 2);

        let y = SpaceDescriptor::new(4, 0).unwrap();
        assert_eq!(y.beta(), -0.5);
        assert!(!y.is_transform_eligible());

        assert!(!SpaceDescriptor::new(4, 1).unwrap().is_transform_eligible());
        assert!(SpaceDescriptor::new(1, 1).is_err());
        assert!(SpaceDescriptor::new(0, 0).is_err());
        assert_eq!(SpaceDescriptor::real_hyperbolic(5).unwrap(), y);
    }

    #[test]
    fn spectral_param_guards() {
        assert!(SpectralParam::new(Complex64::new(1.0, -0.1)).is_err());
        assert!(matches!(SpectralParam::new(Complex64::new(1e-9, 0.0)), Err(Error::Pole(_))));
        let l = SpectralParam::new(Complex64::new(2.0, 0.5)).unwrap();
        assert_eq!(l.i_lambda(), Complex64::new(-0.5, 2.0));
    }

    #[test]
    fn bundle_param_guards() {
        assert!(BundleParam::new(-1.0).is_err());
        assert!(BundleParam::new(f64::INFINITY).is_err());
        assert_eq!(BundleParam::new(2.0).unwrap().value(), 2.0);
    }

    #[test]
    fn cosh_pow_large_r() {
        let s = Complex64::new(-3.0, 1.0);
        let direct = Complex64::new(5.0f64.cosh(), 0.0).powc(s);
        assert!((cosh_pow(5.0, s) - direct).norm() < 1e-14 * direct.norm());
        assert!(cosh_pow(800.0, s).norm() == 0.0);
    }
}
