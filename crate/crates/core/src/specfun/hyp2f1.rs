use core::cmp::Ordering;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{gamma, near_nonpositive_integer, pos_pow};
use crate::quadrature::{exp_sinh, tanh_sinh, Abscissa, QuadratureResult, DEFAULT_MAX_LEVEL};
use crate::{Error, Result};

/// Largest argument accepted by the series engine.
pub const Z_MAX: f64 = 0.999;
/// Most negative argument accepted by [`hyp2f1`].
pub const Z_MIN: f64 = -50.0;
/// Hard budget on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 200_000;

const SERIES_EPS: f64 = 1e-17;
const SMALL_TERMS_NEEDED: u32 = 3;
const EULER_TOL: f64 = 1e-13;

/// Validated arguments of `₂F₁(a, b; c; z)` for real `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Args {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub z: f64,
}

impl Hyp2F1Args {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Self> {
        if near_nonpositive_integer(c) {
            return Err(Error::Pole("2F1 lower parameter c is a nonpositive integer"));
        }
        if !z.is_finite() || !(Z_MIN..=Z_MAX).contains(&z) {
            return Err(Error::Domain("2F1 argument outside [-50, 0.999]"));
        }
        for p in [a, b, c] {
            if !(p.re.is_finite() && p.im.is_finite()) {
                return Err(Error::Domain("2F1 parameter is not finite"));
            }
        }
        Ok(Self { a, b, c, z })
    }
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` on `z ∈ [-50, 0.999]`.
///
/// Nonnegative arguments are summed directly; negative ones are first mapped
/// into `(0, 1)` with the Pfaff transformation.
pub fn hyp2f1(args: Hyp2F1Args) -> Result<Complex64> {
    let Hyp2F1Args { a, b, c, z } = args;
    if z == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if z > 0.0 {
        return series(a, b, c, z);
    }
    let (a, b) = pfaff_slots(a, b, c);
    let w = z / (z - 1.0);
    let prefactor = pos_pow(1.0 - z, -a);
    Ok(prefactor * series(a, c - b, c, w)?)
}

/// `₂F₁(a, b; c; z)` anywhere on `z <= 0`.
///
/// Uses [`hyp2f1`] down to `z = -50`; below that the Euler integral
/// `Γ(c)/(Γ(b)Γ(c-b)) ∫₀¹ s^{b-1}(1-s)^{c-b-1}(1-sz)^{-a} ds`, which needs
/// `Re c > Re b > 0` for one of the two numerator parameters.
pub fn hyp2f1_negative(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    if z > 0.0 || z.is_nan() {
        return Err(Error::Domain("hyp2f1_negative needs z <= 0"));
    }
    if z >= Z_MIN {
        return hyp2f1(Hyp2F1Args::new(a, b, c, z)?);
    }
    let euler_ok = |p: Complex64| p.re > 0.0 && c.re > p.re;
    let (a, b) = if euler_ok(b) {
        (a, b)
    } else if euler_ok(a) {
        (b, a)
    } else {
        return Err(Error::Domain("2F1 below z = -50 needs Re c > Re b > 0"));
    };
    euler_integral(a, b, c, z)
}

// Γ(c)/(Γ(b)Γ(c-b)) ∫₀¹ s^{b-1}(1-s)^{c-b-1}(1+ms)^{-a} ds with m = -z.
//
// For large m the factor (1+ms)^{-a} turns over at s ≈ 1/m, far inside the
// endpoint layer. [0, 1/2] is therefore integrated in w = -ln(2s), split at
// the turnover w₀ = ln(m/2); [1/2, 1] keeps the (1-s) singularity for tanh-sinh.
fn euler_integral(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let norm = gamma(c)? / (gamma(b)? * gamma(c - b)?);
    let m = -z;
    let log_one_plus = |s: f64| {
        let ms = m * s;
        if ms < 1.0 {
            ms.ln_1p()
        } else {
            ms.ln() + (1.0 / ms).ln_1p()
        }
    };
    let near_one = converged(tanh_sinh(0.5, 1.0, EULER_TOL, |p: Abscissa| {
        let exponent = (b - one) * p.x.ln() + (c - b - one) * p.to_upper.ln() - a * log_one_plus(p.x);
        Ok(exponent.exp())
    })?)?;
    // s = e^{-w}/2, ds = s dw
    let in_w = |w: f64| {
        let s = 0.5 * (-w).exp();
        let exponent = b * s.ln() + (c - b - one) * (-s).ln_1p() - a * log_one_plus(s);
        Ok(exponent.exp())
    };
    let w0 = (m / 2.0).ln().max(0.0);
    let mut near_zero = converged(exp_sinh(w0, EULER_TOL, DEFAULT_MAX_LEVEL, |p: Abscissa| in_w(p.x))?)?;
    if w0 > 0.0 {
        near_zero += converged(tanh_sinh(0.0, w0, EULER_TOL, |p: Abscissa| in_w(p.x))?)?;
    }
    Ok(norm * (near_zero + near_one))
}

fn converged(r: QuadratureResult) -> Result<Complex64> {
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::NonConvergence { estimate: r.error_estimate })
    }
}

// Picks which numerator parameter carries the Pfaff prefactor. The choice is
// a function of the unordered pair {a, b}, so the result is exactly symmetric.
fn pfaff_slots(a: Complex64, b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let terminates = |p: Complex64| near_nonpositive_integer(p);
    match (terminates(a), terminates(b)) {
        (true, false) => return (a, b),
        (false, true) => return (b, a),
        _ => {}
    }
    match (terminates(c - b), terminates(c - a)) {
        (true, false) => return (a, b),
        (false, true) => return (b, a),
        _ => {}
    }
    let order = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
    if order == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    }
}

fn series(a: Complex64, b: Complex64, c: Complex64, w: f64) -> Result<Complex64> {
    debug_assert!((0.0..=Z_MAX).contains(&w));
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * w;
        term *= ratio;
        if term.re == 0.0 && term.im == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if term.norm() <= SERIES_EPS * sum.norm() && ratio.norm() < 1.0 {
            small += 1;
            if small >= SMALL_TERMS_NEEDED {
                return finite(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Convergence { terms: MAX_SERIES_TERMS })
}

fn finite(v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain("2F1 value overflowed"))
    }
}
