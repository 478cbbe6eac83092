//! Compact spectral windows with tensor-product quadrature.

use crate::error::{Error, Result};
use crate::quad::Panels;

/// Geometry of the window in frequency space.
#[derive(Debug, Clone, PartialEq)]
pub enum WindowShape {
    /// 1D interval `[lo, hi]`.
    Interval { lo: f64, hi: f64 },
    /// Axis-aligned 2D box.
    Box2 { lo: [f64; 2], hi: [f64; 2] },
    /// 2D disc.
    Ball { center: [f64; 2], radius: f64 },
    /// Signed truncated cone `{t (cos a, sin a) : a in [alpha_min, alpha_max], |t| <= t_max}`.
    Cone {
        alpha_min: f64,
        alpha_max: f64,
        t_max: f64,
    },
}

/// A compact window together with a quadrature rule over it.
///
/// Nodes are stored as `[f64; 2]`; 1D windows use the first coordinate.
#[derive(Debug, Clone)]
pub struct SpectralWindow {
    shape: WindowShape,
    nodes: Vec<[f64; 2]>,
    weights: Vec<f64>,
    /// For cone windows: the direction angles, and the positive t quadrature
    /// nodes shared by every direction (node order is direction-major,
    /// then +t block followed by -t block).
    cone_layout: Option<(Vec<f64>, Vec<f64>)>,
}

impl SpectralWindow {
    pub fn interval(lo: f64, hi: f64, n_panels: usize, n_nodes: usize) -> Result<Self> {
        if !(hi > lo) {
            return Err(Error::Geometry(format!("empty interval [{lo}, {hi}]")));
        }
        let p = Panels::new(lo, hi, n_panels, n_nodes);
        Ok(SpectralWindow {
            shape: WindowShape::Interval { lo, hi },
            nodes: p.nodes.iter().map(|&x| [x, 0.0]).collect(),
            weights: p.weights,
            cone_layout: None,
        })
    }

    pub fn box2(lo: [f64; 2], hi: [f64; 2], n_panels: usize, n_nodes: usize) -> Result<Self> {
        if !(hi[0] > lo[0] && hi[1] > lo[1]) {
            return Err(Error::Geometry("empty box".into()));
        }
        let px = Panels::new(lo[0], hi[0], n_panels, n_nodes);
        let py = Panels::new(lo[1], hi[1], n_panels, n_nodes);
        let mut nodes = Vec::with_capacity(px.len() * py.len());
        let mut weights = Vec::with_capacity(px.len() * py.len());
        for (x, wx) in px.iter() {
            for (y, wy) in py.iter() {
                nodes.push([x, y]);
                weights.push(wx * wy);
            }
        }
        Ok(SpectralWindow {
            shape: WindowShape::Box2 { lo, hi },
            nodes,
            weights,
            cone_layout: None,
        })
    }

    pub fn ball(center: [f64; 2], radius: f64, n_r: usize, n_phi: usize) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Geometry(format!("ball radius must be positive, got {radius}")));
        }
        let radial = Panels::new(0.0, radius, n_r.max(1), 10);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for (r, w) in radial.iter() {
            for k in 0..n_phi {
                let phi = (k as f64 + 0.5) * dphi;
                nodes.push([center[0] + r * phi.cos(), center[1] + r * phi.sin()]);
                weights.push(w * r * dphi);
            }
        }
        Ok(SpectralWindow {
            shape: WindowShape::Ball { center, radius },
            nodes,
            weights,
            cone_layout: None,
        })
    }

    /// Truncated cone through the listed directions: the quadrature is a
    /// trapezoid rule in the angle (nodes exactly at `alphas`) times
    /// Gauss–Legendre in `t` with the polar Jacobian `|t|`.
    pub fn cone(
        alphas: &[f64],
        t_max: f64,
        t_panels: usize,
        t_nodes: usize,
    ) -> Result<Self> {
        if alphas.len() < 2 {
            return Err(Error::Geometry(
                "cone window needs at least two directions".into(),
            ));
        }
        let (alpha_min, alpha_max) = (alphas[0], *alphas.last().unwrap());
        let width = alpha_max - alpha_min;
        if !(width > 0.0 && width < std::f64::consts::PI + 1e-12) {
            return Err(Error::Geometry(format!(
                "angular sector width must lie in (0, pi], got {width}"
            )));
        }
        if !(t_max > 0.0) {
            return Err(Error::Geometry(format!("t_max must be positive, got {t_max}")));
        }
        let tq = Panels::new(0.0, t_max, t_panels, t_nodes);
        let da = width / (alphas.len() - 1) as f64;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for (i, &alpha) in alphas.iter().enumerate() {
            let aw = if i == 0 || i == alphas.len() - 1 { 0.5 * da } else { da };
            let d = [alpha.cos(), alpha.sin()];
            for sign in [1.0, -1.0] {
                for (t, w) in tq.iter() {
                    nodes.push([sign * t * d[0], sign * t * d[1]]);
                    weights.push(aw * w * t);
                }
            }
        }
        Ok(SpectralWindow {
            shape: WindowShape::Cone { alpha_min, alpha_max, t_max },
            nodes,
            weights,
            cone_layout: Some((alphas.to_vec(), tq.nodes)),
        })
    }

    pub fn shape(&self) -> &WindowShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        match self.shape {
            WindowShape::Interval { .. } => 1,
            _ => 2,
        }
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Direction angles and positive-t nodes for cone windows.
    pub fn cone_layout(&self) -> Option<(&[f64], &[f64])> {
        self.cone_layout.as_ref().map(|(a, t)| (a.as_slice(), t.as_slice()))
    }

    /// Exact measure of the window (with the polar Jacobian for cones).
    pub fn volume(&self) -> f64 {
        match &self.shape {
            WindowShape::Interval { lo, hi } => hi - lo,
            WindowShape::Box2 { lo, hi } => (hi[0] - lo[0]) * (hi[1] - lo[1]),
            WindowShape::Ball { radius, .. } => std::f64::consts::PI * radius * radius,
            WindowShape::Cone { alpha_min, alpha_max, t_max } => {
                (alpha_max - alpha_min) * t_max * t_max
            }
        }
    }

    pub fn quadrature_volume(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Largest node magnitude; used to size oscillatory quadratures.
    pub fn max_frequency(&self) -> f64 {
        self.nodes
            .iter()
            .map(|p| p[0].hypot(p[1]))
            .fold(0.0, f64::max)
    }

    /// Whether the closed ball `B(center, r)` lies inside the window.
    pub fn contains_ball(&self, center: [f64; 2], r: f64) -> bool {
        match &self.shape {
            WindowShape::Interval { lo, hi } => center[0] - r >= *lo && center[0] + r <= *hi,
            WindowShape::Box2 { lo, hi } => {
                (0..2).all(|k| center[k] - r >= lo[k] && center[k] + r <= hi[k])
            }
            WindowShape::Ball { center: c, radius } => {
                let d = (center[0] - c[0]).hypot(center[1] - c[1]);
                d + r <= *radius
            }
            WindowShape::Cone { alpha_min, alpha_max, t_max } => {
                let fits_wedge = |p: [f64; 2]| {
                    // signed distances to the two boundary rays, inward positive
                    let d_min = -alpha_min.sin() * p[0] + alpha_min.cos() * p[1];
                    let d_max = alpha_max.sin() * p[0] - alpha_max.cos() * p[1];
                    d_min >= r && d_max >= r
                };
                let inside_radius = center[0].hypot(center[1]) + r <= *t_max;
                inside_radius && (fits_wedge(center) || fits_wedge([-center[0], -center[1]]))
            }
        }
    }
}
