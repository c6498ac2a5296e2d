//! Elementary closed forms of odd dimensional hyperbolic resolvents.
//!
//! `R_{2m+1}(λ, r) = C_m(λ) · D^m e^{iλr}` with `D = (1/sinh r)·d/dr` and
//! `C_m(λ) = (-1)^{m+1} / (2iλ (2π)^m)`. The iterates `D^m e^{iλr}` are built
//! exactly as [`TermSum`]s and cached per `m`.

mod lambda_poly;
mod term_sum;

pub use lambda_poly::LambdaPoly;
pub use term_sum::{eval_term_sum, BoundTermSum, TermSum};

use alloc::borrow::Cow;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use once_cell::race::OnceBox;

use crate::{Error, Result};

/// Largest `m` (dimension `2m + 1`) whose iterate fits in `i128` coefficients.
pub const MAX_ODD_ORDER: u32 = 24;

const CACHE_LEN: usize = MAX_ODD_ORDER as usize + 1;
static CACHE: [OnceBox<TermSum>; CACHE_LEN] = [const { OnceBox::new() }; CACHE_LEN];

/// `D^m e^{iλr}` as an exact term sum.
pub fn exp_derivative_power(m: u32) -> Result<Cow<'static, TermSum>> {
    if m > MAX_ODD_ORDER {
        return Err(Error::Domain("odd resolvent order above MAX_ODD_ORDER"));
    }
    Ok(Cow::Borrowed(cached(m as usize)))
}

fn cached(m: usize) -> &'static TermSum {
    CACHE[m].get_or_init(|| {
        let t = if m == 0 { TermSum::exponential() } else { cached(m - 1).apply_d() };
        alloc::boxed::Box::new(t)
    })
}

/// `C_m(λ) = (-1)^{m+1} / (2iλ (2π)^m)`.
pub fn odd_resolvent_constant(m: u32, lambda: Complex64) -> Result<Complex64> {
    if lambda.norm() < crate::kernels::LAMBDA_MIN {
        return Err(Error::Pole("odd resolvent constant at λ = 0"));
    }
    let sign = if m.is_multiple_of(2) { -1.0 } else { 1.0 };
    let denom = Complex64::new(0.0, 2.0) * lambda * (2.0 * PI).powi(m as i32);
    Ok(Complex64::new(sign, 0.0) / denom)
}

/// Resolvent kernel of the real hyperbolic space of dimension `2m + 1`.
pub fn odd_resolvent(m: u32, lambda: Complex64, r: f64) -> Result<Complex64> {
    OddResolvent::new(m, lambda)?.eval(r)
}

/// [`odd_resolvent`] with `m` and `λ` fixed, for repeated evaluation in `r`.
#[derive(Debug, Clone)]
pub struct OddResolvent {
    constant: Complex64,
    bound: BoundTermSum,
}

impl OddResolvent {
    pub fn new(m: u32, lambda: Complex64) -> Result<Self> {
        let constant = odd_resolvent_constant(m, lambda)?;
        let bound = exp_derivative_power(m)?.bind(lambda);
        Ok(Self { constant, bound })
    }

    pub fn eval(&self, r: f64) -> Result<Complex64> {
        Ok(self.constant * self.bound.eval(r)?)
    }
}

/// Checks `-1/(2π) · csch · d/dr [C_m D^m e^{iλr}] = C_{m+1} D^{m+1} e^{iλr}`
/// coefficient by coefficient.
///
/// Since `C_{m+1} = -C_m / (2π)`, the constants cancel and the identity is the
/// exact equality of `csch · d/dr (D^m e)` with the cached `D^{m+1} e`.
pub fn symbolic_recurrence_holds(m: u32) -> Result<bool> {
    if m >= MAX_ODD_ORDER {
        return Err(Error::Domain("odd resolvent order above MAX_ODD_ORDER"));
    }
    let lhs = exp_derivative_power(m)?
        .checked_derivative()
        .ok_or(Error::Domain("coefficient overflow"))?
        .mul_csch();
    let rhs = exp_derivative_power(m + 1)?;
    Ok(lhs == *rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn low_order_closed_forms() {
        let i = Complex64::new(0.0, 1.0);
        for lambda in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.5), Complex64::new(0.0, 3.0)] {
            for r in [0.1, 0.7, 2.0, 25.0] {
                let e = (i * lambda * r).exp();
                let r0 = -e / (i * lambda * 2.0);
                let r1 = e / (4.0 * PI * r.sinh());
                let r2 = e * (Complex64::new(1.0 / r.tanh(), 0.0) - i * lambda) / (8.0 * PI * PI * r.sinh().powi(2));
                assert!(rel(odd_resolvent(0, lambda, r).unwrap(), r0) < 1e-14);
                assert!(rel(odd_resolvent(1, lambda, r).unwrap(), r1) < 1e-14);
                assert!(rel(odd_resolvent(2, lambda, r).unwrap(), r2) < 1e-13);
            }
        }
    }

    #[test]
    fn lambda_zero_is_a_pole() {
        assert!(matches!(odd_resolvent(1, Complex64::new(0.0, 0.0), 1.0), Err(Error::Pole(_))));
    }

    #[test]
    fn cache_reaches_max_order() {
        let t = exp_derivative_power(MAX_ODD_ORDER).unwrap();
        assert!(!t.is_zero());
        assert!(exp_derivative_power(MAX_ODD_ORDER + 1).is_err());
    }

    #[test]
    fn symbolic_recurrence_up_to_eight() {
        for m in 0..=8 {
            assert!(symbolic_recurrence_holds(m).unwrap(), "m = {m}");
        }
    }
}
