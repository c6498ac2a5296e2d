use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{QuadratureResult, DEFAULT_MAX_LEVEL};
use crate::{Error, Result};

// |t| range of the tanh-sinh rule; beyond it the abscissae underflow.
const TANH_SINH_T_MAX: f64 = 6.5;
// t range of the exp-sinh rule.
const EXP_SINH_T_MIN: f64 = -4.0;
const EXP_SINH_T_MAX: f64 = 6.8;
const MIN_LEVEL: u32 = 3;
const ROUNDOFF_FACTOR: f64 = 8.0 * f64::EPSILON;
// A weighted node below this fraction of the running sum counts as negligible.
const QUIET_FACTOR: f64 = 1e-20;
const QUIET_NODES: u32 = 4;

/// A quadrature node, with its distances to both interval ends computed
/// without cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_lower: f64,
    pub to_upper: f64,
}

/// Tanh-sinh rule on `[a, b]` with the default level budget.
///
/// The returned result carries a `converged` flag; the caller decides whether
/// an unconverged value is acceptable.
pub fn tanh_sinh<F>(a: f64, b: f64, tol: f64, f: F) -> Result<QuadratureResult>
where
    F: FnMut(Abscissa) -> Result<Complex64>,
{
    tanh_sinh_with(a, b, tol, DEFAULT_MAX_LEVEL, f)
}

/// Tanh-sinh rule on `[a, b]` refining the step `h = 2^{-level}` up to `max_level`.
pub fn tanh_sinh_with<F>(a: f64, b: f64, tol: f64, max_level: u32, mut f: F) -> Result<QuadratureResult>
where
    F: FnMut(Abscissa) -> Result<Complex64>,
{
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::Domain("tanh-sinh needs a finite interval with a < b"));
    }
    let width = b - a;
    let node = |t: f64| -> Option<(Abscissa, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * s.abs()).exp();
        let near = width * e / (1.0 + e);
        if near == 0.0 {
            return None;
        }
        let far = width / (1.0 + e);
        let weight = width * 2.0 * e / ((1.0 + e) * (1.0 + e)) * FRAC_PI_2 * t.cosh();
        let (from_lower, to_upper) = if t < 0.0 { (near, far) } else { (far, near) };
        let x = if t < 0.0 { a + from_lower } else { b - to_upper };
        Some((Abscissa { x, from_lower, to_upper }, weight))
    };
    refine(tol, max_level, -TANH_SINH_T_MAX, TANH_SINH_T_MAX, node, &mut f)
}

/// Exp-sinh rule on `[a, ∞)`: `x = a + exp(π/2 · sinh t)`.
///
/// Suited to integrands that are regular at `a` and decay (algebraically or
/// exponentially) at infinity.
pub fn exp_sinh<F>(a: f64, tol: f64, max_level: u32, mut f: F) -> Result<QuadratureResult>
where
    F: FnMut(Abscissa) -> Result<Complex64>,
{
    if !a.is_finite() {
        return Err(Error::Domain("exp-sinh needs a finite lower limit"));
    }
    let node = |t: f64| -> Option<(Abscissa, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        let offset = s.exp();
        if offset == 0.0 || !offset.is_finite() {
            return None;
        }
        let weight = offset * FRAC_PI_2 * t.cosh();
        Some((Abscissa { x: a + offset, from_lower: offset, to_upper: f64::INFINITY }, weight))
    };
    refine(tol, max_level, EXP_SINH_T_MIN, EXP_SINH_T_MAX, node, &mut f)
}

// Trapezoidal sums on t ∈ [t_min, t_max], halving h each level and reusing
// the previous nodes. On the positive side, once the weighted integrand has
// been negligible for a trailing run of nodes, later levels stop at the start
// of that run instead of sampling the far (often under- or overflowing) tail.
fn refine<N, F>(
    tol: f64,
    max_level: u32,
    t_min: f64,
    t_max: f64,
    node: N,
    f: &mut F,
) -> Result<QuadratureResult>
where
    N: Fn(f64) -> Option<(Abscissa, f64)>,
    F: FnMut(Abscissa) -> Result<Complex64>,
{
    let mut evaluations = 0usize;
    let mut abs_total = 0.0;
    let mut h = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut previous = Complex64::new(0.0, 0.0);
    let mut estimate = f64::INFINITY;
    let mut positive_bound = t_max;

    for level in 0..=max_level {
        let (start, step) = if level == 0 { (0.0, h) } else { (h, 2.0 * h) };
        let mut level_sum = Complex64::new(0.0, 0.0);
        let mut level_abs = 0.0;
        let mut last_scale = sum.norm();
        for direction in [1.0, -1.0] {
            let bound = if direction > 0.0 { positive_bound } else { -t_min };
            let mut quiet = 0;
            let mut quiet_start = bound;
            let mut k = 0usize;
            loop {
                let t = direction * (start + step * k as f64);
                k += 1;
                if t.abs() > bound {
                    break;
                }
                if level == 0 && direction < 0.0 && t == 0.0 {
                    continue;
                }
                let Some((p, w)) = node(t) else { break };
                let v = f(p)?;
                evaluations += 1;
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::Domain("integrand is not finite"));
                }
                let contribution = v * w;
                level_sum += contribution;
                let magnitude = contribution.norm();
                level_abs += magnitude;
                last_scale = last_scale.max(level_sum.norm() * h);
                if t > 1.0 && magnitude * h <= QUIET_FACTOR * last_scale {
                    if quiet == 0 {
                        quiet_start = t;
                    }
                    quiet += 1;
                    if quiet >= QUIET_NODES {
                        break;
                    }
                } else {
                    quiet = 0;
                }
            }
            if direction > 0.0 && quiet >= 2 {
                positive_bound = positive_bound.min(quiet_start);
            }
        }
        sum = if level == 0 { level_sum * h } else { previous * 0.5 + level_sum * h };
        abs_total = if level == 0 { level_abs * h } else { abs_total * 0.5 + level_abs * h };
        if level > 0 {
            let roundoff = ROUNDOFF_FACTOR * abs_total;
            let diff = (sum - previous).norm().max(roundoff);
            let scale = sum.norm();
            estimate = if scale > 0.0 { diff / scale } else if diff == 0.0 { 0.0 } else { f64::INFINITY };
            if level >= MIN_LEVEL && estimate <= tol {
                return Ok(QuadratureResult { value: sum, error_estimate: estimate, evaluations, converged: true });
            }
        }
        previous = sum;
        h *= 0.5;
    }
    Ok(QuadratureResult { value: sum, error_estimate: estimate, evaluations, converged: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_sinh_polynomial() {
        let r = tanh_sinh(0.0, 2.0, 1e-12, |p| Ok(Complex64::new(p.x * p.x, 0.0))).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 8.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn tanh_sinh_both_endpoints_singular() {
        // ∫₀¹ x^{-1/2} (1-x)^{-1/2} dx = π
        let r = tanh_sinh(0.0, 1.0, 1e-12, |p| {
            Ok(Complex64::new((p.from_lower * p.to_upper).powf(-0.5), 0.0))
        })
        .unwrap();
        assert!((r.value.re - core::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn exp_sinh_exponential_tail() {
        let r = exp_sinh(0.0, 1e-12, 10, |p| Ok(Complex64::new((-p.x).exp(), 0.0))).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bad_interval() {
        assert!(tanh_sinh(1.0, 1.0, 1e-10, |_| Ok(Complex64::new(1.0, 0.0))).is_err());
    }
}
