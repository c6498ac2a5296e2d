//! Complex-parameter special functions: Gamma, Pochhammer symbols and the Gauss
//! hypergeometric function on the real axis.

mod gamma;
mod hyp2f1;

pub use gamma::{gamma, pochhammer};
pub use hyp2f1::{hyp2f1, hyp2f1_negative, Hyp2F1Args, MAX_SERIES_TERMS, Z_MAX, Z_MIN};

use num_complex::Complex64;

/// Distance below which an argument counts as sitting on a nonpositive integer.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// `true` when `z` is within [`POLE_TOLERANCE`] of `0, -1, -2, ...`.
pub fn near_nonpositive_integer(z: Complex64) -> bool {
    #[allow(unused_imports)] // shadowed by inherent methods when std is linked
    use num_traits::Float;
    if z.im.abs() > POLE_TOLERANCE || z.re > POLE_TOLERANCE {
        return false;
    }
    (z.re - z.re.round()).abs() <= POLE_TOLERANCE
}

/// Complex power `w^s` for a strictly positive real base on the principal branch.
pub(crate) fn pos_pow(w: f64, s: Complex64) -> Complex64 {
    #[allow(unused_imports)] // shadowed by inherent methods when std is linked
    use num_traits::Float;
    debug_assert!(w > 0.0);
    (s * w.ln()).exp()
}
