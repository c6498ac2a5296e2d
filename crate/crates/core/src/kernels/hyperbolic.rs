use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{check_r, cosh_pow, sech2, SpectralParam};
use crate::specfun::{gamma, hyp2f1, Hyp2F1Args};
use crate::{Error, Result};

fn check_n(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("hyperbolic dimension must be at least 1"));
    }
    Ok(f64::from(n))
}

/// Resolvent kernel of `H^n` written as a multiple of the fundamental solution
/// at infinity, with half-distance argument `sech²(r/2)`.
pub fn hyperbolic_resolvent_half(n: u32, lambda: SpectralParam, r: f64) -> Result<Complex64> {
    let nf = check_n(n)?;
    check_r(r)?;
    let one = Complex64::new(1.0, 0.0);
    let il = lambda.i_lambda();
    let a = Complex64::new((nf - 1.0) / 2.0, 0.0) - il;
    let constant = crate::specfun::pos_pow(2.0, il * 2.0 - nf)
        * PI.powf(-(nf - 1.0) / 2.0)
        * gamma(a)?
        / gamma(one - il)?;
    let f = hyp2f1(Hyp2F1Args::new(a, Complex64::new(0.5, 0.0) - il, one - il * 2.0, sech2(r / 2.0))?)?;
    Ok(constant * cosh_pow(r / 2.0, il * 2.0 - (nf - 1.0)) * f)
}

/// Resolvent kernel of `H^n` with full-distance argument `sech² r`.
pub fn hyperbolic_resolvent(n: u32, lambda: SpectralParam, r: f64) -> Result<Complex64> {
    let nf = check_n(n)?;
    check_r(r)?;
    let one = Complex64::new(1.0, 0.0);
    let il = lambda.i_lambda();
    let half_a = (Complex64::new((nf - 1.0) / 2.0, 0.0) - il) * 0.5;
    let half_a_shift = half_a + 0.5;
    let constant = gamma(half_a)? * gamma(half_a_shift)? / (gamma(one - il)? * 4.0 * PI.powf(nf / 2.0));
    let f = hyp2f1(Hyp2F1Args::new(half_a, half_a_shift, one - il, sech2(r))?)?;
    Ok(constant * cosh_pow(r, il - (nf - 1.0) / 2.0) * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::odd_resolvent;

    fn lam(re: f64, im: f64) -> SpectralParam {
        SpectralParam::new(Complex64::new(re, im)).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm())
    }

    #[test]
    fn one_dimensional_reduction() {
        let i = Complex64::new(0.0, 1.0);
        for l in [lam(1.0, 0.0), lam(2.0, 0.5), lam(0.0, 3.0)] {
            for r in [0.1, 1.0, 4.0] {
                let expected = -(i * l.value() * r).exp() / (i * l.value() * 2.0);
                assert!(rel(hyperbolic_resolvent_half(1, l, r).unwrap(), expected) < 1e-12);
                assert!(rel(hyperbolic_resolvent(1, l, r).unwrap(), expected) < 1e-12);
            }
        }
    }

    #[test]
    fn three_dimensional_green_kernel() {
        let l = lam(2.0, 1.0);
        let a = hyperbolic_resolvent(3, l, 1.0).unwrap();
        let b = hyperbolic_resolvent_half(3, l, 1.0).unwrap();
        let c = odd_resolvent(1, l.value(), 1.0).unwrap();
        assert!(rel(a, c) < 1e-12);
        assert!(rel(b, c) < 1e-10);
    }

    #[test]
    fn five_dimensional_chain() {
        let l = lam(1.0, 0.0);
        let a = hyperbolic_resolvent_half(5, l, 0.7).unwrap();
        assert!(rel(a, odd_resolvent(2, l.value(), 0.7).unwrap()) < 1e-9);
    }

    #[test]
    fn frozen_values() {
        // 40-digit reference evaluations of the hypergeometric form.
        let cases = [
            (4, lam(1.5, 0.0), 0.5, Complex64::new(0.117_172_294_858_468_68, 0.043_187_031_914_916_234)),
            (2, lam(1.5, 0.0), 1.0, Complex64::new(-0.085_344_518_502_986_23, 0.121_445_835_004_585_6)),
            (6, lam(0.3, 1.0), 0.1, Complex64::new(80.359_823_451_885_5, 0.120_703_779_127_193_54)),
        ];
        for (n, l, r, expected) in cases {
            assert!(rel(hyperbolic_resolvent(n, l, r).unwrap(), expected) < 1e-12, "n={n}");
            assert!(rel(hyperbolic_resolvent_half(n, l, r).unwrap(), expected) < 1e-11, "n={n}");
        }
    }

    #[test]
    fn large_distance_asymptote() {
        for n in [2, 3, 6] {
            for l in [lam(1.0, 0.0), lam(0.3, 1.0)] {
                let r = 10.0;
                let il = l.i_lambda();
                let one = Complex64::new(1.0, 0.0);
                let half_a = (Complex64::new((f64::from(n) - 1.0) / 2.0, 0.0) - il) * 0.5;
                let c = gamma(half_a).unwrap() * gamma(half_a + 0.5).unwrap()
                    / (gamma(one - il).unwrap() * 4.0 * PI.powf(f64::from(n) / 2.0));
                let leading = c * cosh_pow(r, il - (f64::from(n) - 1.0) / 2.0);
                let ratio = hyperbolic_resolvent(n, l, r).unwrap().norm() / leading.norm();
                assert!((0.5..2.0).contains(&ratio), "n={n} ratio={ratio}");
            }
        }
    }

    #[test]
    fn small_r_is_rejected() {
        assert!(matches!(hyperbolic_resolvent(3, lam(1.0, 0.0), 0.01), Err(Error::Domain(_))));
        // sech²(r/2) crosses the series guard below r ≈ 0.063.
        assert!(matches!(hyperbolic_resolvent_half(3, lam(1.0, 0.0), 0.05), Err(Error::Domain(_))));
        assert!(hyperbolic_resolvent(3, lam(1.0, 0.0), 0.05).is_ok());
    }
}
