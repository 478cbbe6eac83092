//! Numerical procedures for three classic ill-posed approximation problems:
//!
//! - [`stablediff`]: stable estimation of `f'` from sup-norm noisy samples by
//!   central differences with an optimal, noise-dependent stepsize, together
//!   with the worst-case error bounds and the adversarial construction that
//!   shows them sharp.
//! - [`specext`]: inversion of the Fourier transform of a compactly supported
//!   function from a compact spectral window, via delta-type kernels built
//!   from a polynomial damping factor and a smooth mollifier.
//! - [`radon`]: a 2D limited-angle tomography front end that fills a truncated
//!   spectral cone through the projection-slice identity and reconstructs with
//!   the [`specext`] machinery.
//! - [`propc`]: density experiments for products of harmonic functions and
//!   the coefficient-norm blow-up when matching exponentially growing special
//!   solutions by bounded plane-wave superpositions.
//!
//! All operations are deterministic: identical inputs (including seeds)
//! produce identical outputs.

// Parameter validation writes `!(x > 0.0)` and friends so that NaN fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bump;
pub mod error;
pub mod io;
pub mod noise;
pub mod propc;
pub mod quad;
pub mod radon;
pub mod repro;
pub mod specext;
pub mod stablediff;

pub use error::{Error, Result};
pub use num_complex::Complex64;
