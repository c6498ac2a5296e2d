use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::near_nonpositive_integer;
use crate::{Error, Result};

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler's Gamma function for complex arguments.
///
/// Uses a Lanczos sum on `Re z >= 1/2` and the reflection formula
/// `Γ(z)Γ(1-z) = π / sin(πz)` elsewhere.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("gamma argument is not finite"));
    }
    if near_nonpositive_integer(z) {
        return Err(Error::Pole("gamma at a nonpositive integer"));
    }
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        let s = (z * PI).sin();
        Ok(Complex64::new(PI, 0.0) / (s * lanczos(one - z)))
    } else {
        Ok(lanczos(z))
    }
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + (LANCZOS_G + 0.5);
    let log_part = (z + 0.5) * t.ln() - t;
    log_part.exp() * series * (2.0 * PI).sqrt()
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`; `(a)_0 = 1`.
pub fn pochhammer(a: Complex64, k: u32) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, i| acc * (a + i as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_simple_values() {
        assert!(rel(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
        assert!(rel(gamma(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(gamma(c(5.0, 0.0)).unwrap(), c(24.0, 0.0)) < 1e-14);
    }

    #[test]
    fn gamma_poles_are_rejected() {
        for z in [c(0.0, 0.0), c(-1.0, 0.0), c(-7.0, 5e-13), c(-3.0 + 1e-13, 0.0)] {
            assert!(matches!(gamma(z), Err(Error::Pole(_))), "{z}");
        }
        assert!(gamma(c(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(3.7, -2.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(1.0, 0.0), 4), c(24.0, 0.0));
        assert_eq!(pochhammer(c(2.5, 0.0), 2), c(8.75, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 3), c(0.0, 0.0));
    }
}
