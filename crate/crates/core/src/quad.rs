//! Gauss–Legendre quadrature on intervals, panels, and simple 2D regions.

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Newton iteration on the Legendre recurrence; nodes are symmetric and
/// accurate to machine precision for the orders used here (n <= 64).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by upward recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// A composite quadrature rule: concatenated Gauss–Legendre panels.
#[derive(Debug, Clone)]
pub struct Panels {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Panels {
    /// `n_panels` equal panels over `[lo, hi]`, `n_nodes` Gauss points each.
    pub fn new(lo: f64, hi: f64, n_panels: usize, n_nodes: usize) -> Self {
        assert!(hi > lo && n_panels >= 1);
        let (xs, ws) = gauss_legendre(n_nodes);
        let width = (hi - lo) / n_panels as f64;
        let mut nodes = Vec::with_capacity(n_panels * n_nodes);
        let mut weights = Vec::with_capacity(n_panels * n_nodes);
        for p in 0..n_panels {
            let a = lo + p as f64 * width;
            let mid = a + 0.5 * width;
            let half = 0.5 * width;
            for (x, w) in xs.iter().zip(&ws) {
                nodes.push(mid + half * x);
                weights.push(half * w);
            }
        }
        Panels { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Quadrature points/weights on a disc of radius `r` about `center`:
/// Gauss–Legendre radially (with the polar Jacobian) times a uniform
/// angular grid, which integrates trigonometric polynomials exactly.
pub fn disc_rule(
    center: [f64; 2],
    r: f64,
    radial: &Panels,
    n_phi: usize,
) -> (Vec<[f64; 2]>, Vec<f64>) {
    let mut pts = Vec::with_capacity(radial.len() * n_phi);
    let mut wts = Vec::with_capacity(radial.len() * n_phi);
    let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
    for (s, w) in radial.iter() {
        let rs = s * r;
        for k in 0..n_phi {
            let phi = (k as f64 + 0.5) * dphi;
            pts.push([center[0] + rs * phi.cos(), center[1] + rs * phi.sin()]);
            wts.push(w * r * rs * dphi);
        }
    }
    (pts, wts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_nodes_integrate_polynomials_exactly() {
        let (xs, ws) = gauss_legendre(8);
        // degree 15 is exact for an 8-point rule
        for deg in [0usize, 3, 8, 15] {
            let q: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(deg as i32)).sum();
            let exact = if deg % 2 == 1 {
                0.0
            } else {
                2.0 / (deg as f64 + 1.0)
            };
            assert_relative_eq!(q, exact, epsilon = 1e-13);
        }
    }

    #[test]
    fn panels_integrate_smooth_functions() {
        let p = Panels::new(0.0, std::f64::consts::PI, 8, 10);
        assert_relative_eq!(p.integrate(f64::sin), 2.0, epsilon = 1e-12);
        let p = Panels::new(-1.0, 3.0, 4, 12);
        assert_relative_eq!(p.integrate(f64::exp), 3.0f64.exp() - (-1.0f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn disc_rule_area_and_moments() {
        let radial = Panels::new(0.0, 1.0, 4, 10);
        let (pts, wts) = disc_rule([0.5, -0.25], 2.0, &radial, 48);
        let area: f64 = wts.iter().sum();
        assert_relative_eq!(area, std::f64::consts::PI * 4.0, epsilon = 1e-10);
        // centroid
        let cx: f64 = pts.iter().zip(&wts).map(|(p, w)| p[0] * w).sum::<f64>() / area;
        assert_relative_eq!(cx, 0.5, epsilon = 1e-12);
    }
}
