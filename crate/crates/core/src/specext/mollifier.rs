//! Smooth mollifiers supported inside a spectral window.

use crate::bump::profile;
use crate::error::{Error, Result};
use crate::quad::Panels;
use crate::specext::window::SpectralWindow;

/// A bump-profile mollifier `h` with `(2 pi)^{-n} integral(h) = 1`.
///
/// Either a single bump on `B(center, radius)` or a symmetric pair on
/// `B(+-center, radius)`. The pair keeps the kernel (and hence
/// reconstructions of real data) real-valued on sign-symmetric windows such
/// as truncated cones.
#[derive(Debug, Clone)]
pub struct Mollifier {
    dim: usize,
    center: [f64; 2],
    radius: f64,
    symmetric_pair: bool,
    norm_const: f64,
}

fn profile_integral_1d(radius: f64) -> f64 {
    // integral of profile((xi - c)/radius) over its support
    radius * Panels::new(-1.0, 1.0, 24, 12).integrate(profile)
}

fn profile_integral_2d(radius: f64) -> f64 {
    let p = Panels::new(0.0, 1.0, 16, 12);
    radius * radius * 2.0 * std::f64::consts::PI * p.integrate(|r| profile(r) * r)
}

impl Mollifier {
    /// Single bump; the support ball must lie strictly inside the window.
    pub fn new(window: &SpectralWindow, center: [f64; 2], radius: f64) -> Result<Self> {
        Self::build(window, center, radius, false)
    }

    /// Bumps at `+center` and `-center`, jointly normalized.
    pub fn symmetric_pair(window: &SpectralWindow, center: [f64; 2], radius: f64) -> Result<Self> {
        Self::build(window, center, radius, true)
    }

    fn build(
        window: &SpectralWindow,
        center: [f64; 2],
        radius: f64,
        symmetric_pair: bool,
    ) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Geometry(format!(
                "mollifier radius must be positive, got {radius}"
            )));
        }
        let dim = window.dim();
        if !window.contains_ball(center, radius) {
            return Err(Error::Geometry(format!(
                "mollifier support ball (center ({}, {}), radius {radius}) is not inside the window",
                center[0], center[1]
            )));
        }
        if symmetric_pair && !window.contains_ball([-center[0], -center[1]], radius) {
            return Err(Error::Geometry(
                "mirrored mollifier support ball is not inside the window".into(),
            ));
        }
        let single = match dim {
            1 => profile_integral_1d(radius),
            _ => profile_integral_2d(radius),
        };
        let copies = if symmetric_pair { 2.0 } else { 1.0 };
        let two_pi_n = (2.0 * std::f64::consts::PI).powi(dim as i32);
        Ok(Mollifier {
            dim,
            center,
            radius,
            symmetric_pair,
            norm_const: two_pi_n / (copies * single),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn center(&self) -> [f64; 2] {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_symmetric_pair(&self) -> bool {
        self.symmetric_pair
    }

    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    /// `h(xi)`.
    pub fn eval(&self, xi: [f64; 2]) -> f64 {
        let mut v = self.norm_const * self.bump_at(xi, 1.0);
        if self.symmetric_pair {
            v += self.norm_const * self.bump_at(xi, -1.0);
        }
        v
    }

    fn bump_at(&self, xi: [f64; 2], sign: f64) -> f64 {
        let dx = xi[0] - sign * self.center[0];
        let dy = if self.dim == 2 { xi[1] - sign * self.center[1] } else { 0.0 };
        profile(dx.hypot(dy) / self.radius)
    }

    /// `(2 pi)^{-n} integral(h)`, recomputed by quadrature; equals 1 up to
    /// quadrature error.
    pub fn integral_check(&self) -> f64 {
        let copies = if self.symmetric_pair { 2.0 } else { 1.0 };
        let raw = match self.dim {
            1 => profile_integral_1d(self.radius),
            _ => profile_integral_2d(self.radius),
        };
        self.norm_const * copies * raw / (2.0 * std::f64::consts::PI).powi(self.dim as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn window_1d() -> SpectralWindow {
        SpectralWindow::interval(-1.0, 1.0, 8, 10).unwrap()
    }

    #[test]
    fn norm_const_matches_independent_oracle() {
        // 1D window [-1,1], center 0, radius 1: the unnormalized profile
        // integral is computed here with a dense Simpson rule as an oracle.
        let m = Mollifier::new(&window_1d(), [0.0, 0.0], 1.0).unwrap();
        let n = 200_000;
        let h = 2.0 / n as f64;
        let mut simpson = 0.0;
        for i in 0..=n {
            let t = -1.0 + i as f64 * h;
            let c = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            simpson += c * profile(t);
        }
        simpson *= h / 3.0;
        assert_relative_eq!(simpson, 0.443994, epsilon = 2e-6);
        assert_relative_eq!(
            m.norm_const(),
            2.0 * std::f64::consts::PI / simpson,
            max_relative = 1e-9
        );
        // value at the center is norm_const * e^{-1}
        assert_relative_eq!(
            m.eval([0.0, 0.0]),
            m.norm_const() * (-1.0f64).exp(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn vanishes_on_support_boundary() {
        let m = Mollifier::new(&window_1d(), [0.1, 0.0], 0.5).unwrap();
        assert_eq!(m.eval([0.6, 0.0]), 0.0);
        assert_eq!(m.eval([-0.4, 0.0]), 0.0);
        // flat to all orders: still zero just outside
        assert_eq!(m.eval([0.6 + 1e-12, 0.0]), 0.0);
        assert!(m.eval([0.599, 0.0]) > 0.0);
    }

    #[test]
    fn rejects_ball_outside_window() {
        assert!(Mollifier::new(&window_1d(), [0.5, 0.0], 0.6).is_err());
        let ball = SpectralWindow::ball([0.0, 0.0], 2.0, 6, 48).unwrap();
        assert!(Mollifier::new(&ball, [1.5, 0.0], 0.6).is_err());
        assert!(Mollifier::new(&ball, [1.0, 0.0], 0.6).is_ok());
    }

    #[test]
    fn symmetric_pair_normalization() {
        let alphas: Vec<f64> = (0..40)
            .map(|i| {
                std::f64::consts::PI / 6.0
                    + i as f64 * (2.0 * std::f64::consts::PI / 3.0) / 39.0
            })
            .collect();
        let cone = SpectralWindow::cone(&alphas, 8.0, 8, 8).unwrap();
        let m = Mollifier::symmetric_pair(&cone, [0.0, 1.0], 0.7).unwrap();
        assert_relative_eq!(m.integral_check(), 1.0, max_relative = 1e-8);
        // even in xi
        assert_relative_eq!(m.eval([0.2, 1.1]), m.eval([-0.2, -1.1]), max_relative = 1e-14);
    }

    proptest! {
        #[test]
        fn normalization_for_random_placement(c in -0.5f64..0.5, r in 0.05f64..0.45) {
            let m = Mollifier::new(&window_1d(), [c, 0.0], r).unwrap();
            prop_assert!((m.integral_check() - 1.0).abs() < 1e-8);
        }

        #[test]
        fn normalization_2d(cx in -0.8f64..0.8, cy in -0.8f64..0.8, r in 0.1f64..0.6) {
            let ball = SpectralWindow::ball([0.0, 0.0], 2.0, 6, 48).unwrap();
            prop_assume!(ball.contains_ball([cx, cy], r));
            let m = Mollifier::new(&ball, [cx, cy], r).unwrap();
            prop_assert!((m.integral_check() - 1.0).abs() < 1e-8);
        }
    }
}
