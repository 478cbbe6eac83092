//! Forward transforms of compactly supported functions and the spectral
//! inversion formula.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::Panels;
use crate::specext::kernel::DeltaKernel;
use crate::specext::window::SpectralWindow;

/// A compactly supported function given by cell-centered samples on a
/// uniform grid covering `[-a, a]^n`; identically zero outside `B_a`.
#[derive(Debug, Clone)]
pub struct CompactFunction {
    dim: usize,
    support_radius: f64,
    origin: [f64; 2],
    dx: [f64; 2],
    shape: [usize; 2],
    values: Vec<f64>,
}

impl CompactFunction {
    /// Samples `f` at the centers of `n` cells over `[-a, a]`; values with
    /// `|x| >= a` are forced to zero.
    pub fn from_fn_1d(a: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !(a > 0.0) || n == 0 {
            return Err(Error::InvalidParameter("need a > 0 and n > 0".into()));
        }
        let dx = 2.0 * a / n as f64;
        let origin = -a + 0.5 * dx;
        let values = (0..n)
            .map(|i| {
                let x = origin + i as f64 * dx;
                if x.abs() < a {
                    f(x)
                } else {
                    0.0
                }
            })
            .collect();
        Ok(CompactFunction {
            dim: 1,
            support_radius: a,
            origin: [origin, 0.0],
            dx: [dx, dx],
            shape: [n, 1],
            values,
        })
    }

    /// Samples `f` at the centers of `n x n` cells over `[-a, a]^2`; cells
    /// centered outside `B_a` are zero. `supersample > 1` averages that many
    /// sub-samples per axis within each cell (useful for discontinuous `f`).
    pub fn from_fn_2d(
        a: f64,
        n: usize,
        supersample: usize,
        f: impl Fn([f64; 2]) -> f64,
    ) -> Result<Self> {
        if !(a > 0.0) || n == 0 || supersample == 0 {
            return Err(Error::InvalidParameter("need a > 0, n > 0, supersample > 0".into()));
        }
        let dx = 2.0 * a / n as f64;
        let origin = -a + 0.5 * dx;
        let mut values = Vec::with_capacity(n * n);
        let sub = supersample as f64;
        for i in 0..n {
            for k in 0..n {
                let x = origin + i as f64 * dx;
                let y = origin + k as f64 * dx;
                if x.hypot(y) >= a {
                    values.push(0.0);
                    continue;
                }
                let mut acc = 0.0;
                for si in 0..supersample {
                    for sk in 0..supersample {
                        let xs = x + ((si as f64 + 0.5) / sub - 0.5) * dx;
                        let ys = y + ((sk as f64 + 0.5) / sub - 0.5) * dx;
                        acc += if xs.hypot(ys) < a { f([xs, ys]) } else { 0.0 };
                    }
                }
                values.push(acc / (sub * sub));
            }
        }
        Ok(CompactFunction {
            dim: 2,
            support_radius: a,
            origin: [origin, origin],
            dx: [dx, dx],
            shape: [n, n],
            values,
        })
    }

    /// Wraps existing cell values; enforces the zero-outside-support ring.
    pub fn from_values_1d(a: f64, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidParameter("no values".into()));
        }
        let dx = 2.0 * a / n as f64;
        let origin = -a + 0.5 * dx;
        for (i, v) in values.iter().enumerate() {
            let x = origin + i as f64 * dx;
            if x.abs() >= a && *v != 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "value at |x| = {} >= a = {a} must be zero",
                    x.abs()
                )));
            }
        }
        Ok(CompactFunction {
            dim: 1,
            support_radius: a,
            origin: [origin, 0.0],
            dx: [dx, dx],
            shape: [n, 1],
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn cell_volume(&self) -> f64 {
        if self.dim == 1 {
            self.dx[0]
        } else {
            self.dx[0] * self.dx[1]
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `integral of f` by the midpoint rule.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell_volume()
    }
}

/// `f_tilde(xi) = int f(x) e^{i xi.x} dx` by midpoint quadrature on the grid.
pub fn forward_transform(f: &CompactFunction, xi: [f64; 2]) -> Complex64 {
    let vol = f.cell_volume();
    let mut acc = Complex64::new(0.0, 0.0);
    match f.dim {
        1 => {
            for (i, &v) in f.values.iter().enumerate() {
                if v != 0.0 {
                    let x = f.origin[0] + i as f64 * f.dx[0];
                    acc += v * Complex64::cis(xi[0] * x);
                }
            }
        }
        _ => {
            let [n0, n1] = f.shape;
            for i in 0..n0 {
                let x = f.origin[0] + i as f64 * f.dx[0];
                for k in 0..n1 {
                    let v = f.values[i * n1 + k];
                    if v != 0.0 {
                        let y = f.origin[1] + k as f64 * f.dx[1];
                        acc += v * Complex64::cis(xi[0] * x + xi[1] * y);
                    }
                }
            }
        }
    }
    acc * vol
}

/// Spectral data: one complex value per window quadrature node.
#[derive(Debug, Clone)]
pub struct SpectralSamples {
    window: SpectralWindow,
    values: Vec<Complex64>,
}

impl SpectralSamples {
    pub fn new(window: SpectralWindow, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != window.len() {
            return Err(Error::Config(format!(
                "{} spectral values supplied for a window with {} quadrature nodes",
                values.len(),
                window.len()
            )));
        }
        Ok(SpectralSamples { window, values })
    }

    pub fn from_fn(window: SpectralWindow, f: impl Fn([f64; 2]) -> Complex64) -> Self {
        let values = window.nodes().iter().map(|&p| f(p)).collect();
        SpectralSamples { window, values }
    }

    pub fn window(&self) -> &SpectralWindow {
        &self.window
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// A uniform evaluation grid (1D row or 2D raster).
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    pub dim: usize,
    pub origin: [f64; 2],
    pub dx: [f64; 2],
    pub shape: [usize; 2],
}

impl EvalGrid {
    pub fn line(x0: f64, x1: f64, n: usize) -> Self {
        let dx = if n > 1 { (x1 - x0) / (n - 1) as f64 } else { 0.0 };
        EvalGrid { dim: 1, origin: [x0, 0.0], dx: [dx, 0.0], shape: [n, 1] }
    }

    pub fn raster(lo: [f64; 2], hi: [f64; 2], n: usize) -> Self {
        let dx = [
            if n > 1 { (hi[0] - lo[0]) / (n - 1) as f64 } else { 0.0 },
            if n > 1 { (hi[1] - lo[1]) / (n - 1) as f64 } else { 0.0 },
        ];
        EvalGrid { dim: 2, origin: lo, dx, shape: [n, n] }
    }

    pub fn len(&self) -> usize {
        self.shape[0] * self.shape[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, idx: usize) -> [f64; 2] {
        let (i, k) = (idx / self.shape[1], idx % self.shape[1]);
        [
            self.origin[0] + i as f64 * self.dx[0],
            self.origin[1] + k as f64 * self.dx[1],
        ]
    }

    pub fn points(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

/// A complex field sampled on an [`EvalGrid`].
#[derive(Debug, Clone)]
pub struct Field {
    pub grid: EvalGrid,
    pub values: Vec<Complex64>,
}

impl Field {
    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }
}

/// The inversion formula: `f_j(x) = (2 pi)^{-n} int_W ftilde(xi)
/// spectrum_j(xi) e^{-i xi.x} d xi` over the sample window.
pub fn extrapolate(
    samples: &SpectralSamples,
    kernel: &DeltaKernel,
    grid: &EvalGrid,
) -> Result<Field> {
    let window = samples.window();
    let dim = window.dim();
    if dim != kernel.config().dim() {
        return Err(Error::Config(format!(
            "kernel dimension {} does not match window dimension {dim}",
            kernel.config().dim()
        )));
    }
    if grid.dim != dim {
        return Err(Error::Config(format!(
            "evaluation grid dimension {} does not match window dimension {dim}",
            grid.dim
        )));
    }
    // weight * ftilde * kernel spectrum, fused per node
    let fused: Vec<Complex64> = window
        .nodes()
        .iter()
        .zip(window.weights())
        .zip(samples.values())
        .map(|((&node, &w), &v)| w * v * kernel.spectrum(node))
        .collect();
    let norm = (2.0 * std::f64::consts::PI).powi(dim as i32);
    let nodes = window.nodes();
    let values: Vec<Complex64> = grid
        .points()
        .map(|x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (node, fv) in nodes.iter().zip(&fused) {
                acc += fv * Complex64::cis(-(node[0] * x[0] + node[1] * x[1]));
            }
            acc / norm
        })
        .collect();
    Ok(Field { grid: grid.clone(), values })
}

/// The convolution side of the inversion identity:
/// `f_j(x) = int f(y) delta_j(x - y) dy` for a 1D `f` supported in `[-a, a]`.
/// Used as an independent pipeline to validate [`extrapolate`].
pub fn convolution_image_1d(
    f: impl Fn(f64) -> f64,
    a: f64,
    kernel: &DeltaKernel,
    xs: &[f64],
) -> Vec<Complex64> {
    let p = Panels::new(-a, a, 32, 12);
    let fy: Vec<f64> = p.nodes.iter().map(|&y| f(y)).collect();
    xs.iter()
        .map(|&x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for ((&y, &w), &v) in p.nodes.iter().zip(&p.weights).zip(&fy) {
                acc += w * v * kernel.eval([x - y, 0.0]);
            }
            acc
        })
        .collect()
}
