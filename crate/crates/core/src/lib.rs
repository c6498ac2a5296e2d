//! Resolvent kernels of shifted Laplacians on harmonic NA (Damek–Ricci) spaces
//! and real hyperbolic spaces.
//!
//! The crate is `no_std` (with `alloc`) and organised bottom-up:
//!
//! - [`specfun`]: complex Gamma, Pochhammer symbols and a Gauss ₂F₁ engine for
//!   real arguments.
//! - [`closedform`]: exact term algebra for `(1/sinh r · d/dr)^m e^{iλr}` and the
//!   elementary resolvents of odd dimensional hyperbolic spaces.
//! - [`kernels`]: space descriptors, hyperbolic/NA/bundle resolvents, spherical
//!   functions, the transform kernel `W_X` and a Jacobi ODE residual.
//! - [`quadrature`]: double-exponential rules for semi-infinite integrals with
//!   algebraic endpoint singularities, and the NA transform integral.
//! - [`verify`]: identity checks producing [`verify::IdentityReport`]s.
#![no_std]
// `!(x > 0.0)` style guards are how NaN gets rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod closedform;
mod error;
pub mod kernels;
pub mod parse;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
