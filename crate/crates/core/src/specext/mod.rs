//! Inversion of the Fourier transform of a compactly supported function from
//! a compact spectral window.
//!
//! The kernel family `delta_j(x) = P_j(|x|^2) g(x)` pairs a polynomial
//! damping factor `P_j` (a Gaussian-like bump of width `~ a1 sqrt(2/j)`)
//! with `g`, the inverse transform of a smooth mollifier supported inside
//! the window. Multiplying known spectral data by the kernel spectrum and
//! inverting reproduces `f * delta_j`, which converges to `f` on its support
//! as `j` grows.

mod extrapolate;
mod kernel;
mod mollifier;
mod window;

pub use extrapolate::{
    convolution_image_1d, extrapolate, forward_transform, CompactFunction, EvalGrid, Field,
    SpectralSamples,
};
pub use kernel::{
    delta_sequence_check, pj, DeltaCheckReport, DeltaCheckRow, DeltaKernel, DeltaSeqConfig,
    Region, SpectrumMethod,
};
pub use mollifier::Mollifier;
pub use window::{SpectralWindow, WindowShape};
