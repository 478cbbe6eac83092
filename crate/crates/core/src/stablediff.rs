//! Stable estimation of `f'` from sup-norm noisy samples.
//!
//! Given samples of `f_delta` with `||f_delta - f||_inf <= delta` and a
//! smoothness class bound `||f^(j)|| <= m_j` with `1 < j <= 2`, the central
//! difference with stepsize `h_j(delta)` is an order-optimal estimator of
//! `f'`. This module provides the stepsize and error-bound formulas, the
//! differentiation operator on periodic sampled signals, and the two-function
//! adversarial construction showing the `j = 2` bound is attained exactly.

use crate::error::{Error, Result};

/// Relative tolerance used when checking that a point or stepsize lies on
/// the sample grid.
const GRID_SNAP_TOL: f64 = 1e-9;

/// A uniformly sampled 1D function with a sup-norm noise level.
///
/// The grid tiles exactly one period: `period = len * dx`. Evaluation at any
/// grid index wraps periodically; values between samples are never
/// interpolated (interpolation would add error the worst-case bounds do not
/// account for).
#[derive(Debug, Clone)]
pub struct SampledSignal {
    values: Vec<f64>,
    x0: f64,
    dx: f64,
    delta: f64,
}

impl SampledSignal {
    pub fn new(values: Vec<f64>, x0: f64, dx: f64, delta: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("signal has no samples".into()));
        }
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::InvalidParameter(format!("dx must be positive, got {dx}")));
        }
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "noise level delta must be >= 0, got {delta}"
            )));
        }
        Ok(SampledSignal { values, x0, dx, delta })
    }

    /// Samples `f` on `n` points starting at `x0` with spacing `dx`.
    pub fn from_fn(f: impl Fn(f64) -> f64, x0: f64, dx: f64, n: usize, delta: f64) -> Result<Self> {
        let values = (0..n).map(|i| f(x0 + i as f64 * dx)).collect();
        Self::new(values, x0, dx, delta)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    /// The period implied by the grid: `len * dx`.
    pub fn period(&self) -> f64 {
        self.len() as f64 * self.dx
    }

    /// Abscissa of the `i`-th sample.
    pub fn grid_x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    /// Sample by (possibly negative) index with periodic wrapping.
    pub fn sample(&self, i: i64) -> f64 {
        let n = self.values.len() as i64;
        self.values[(i.rem_euclid(n)) as usize]
    }

    /// Maps `x` to its grid index; errors if `x` is not on the grid.
    pub fn index_of(&self, x: f64) -> Result<i64> {
        let fi = (x - self.x0) / self.dx;
        let i = fi.round();
        if (fi - i).abs() > GRID_SNAP_TOL * (1.0 + fi.abs()) {
            return Err(Error::OffGrid { x, x0: self.x0, dx: self.dx });
        }
        Ok(i as i64)
    }
}

/// Smoothness class `(j, m_j)` with `1 < j <= 2`.
///
/// `j = 1 + a` is the Hoelder order of `f'` and `m_j` bounds the
/// corresponding norm (`||f''||_inf` when `j = 2`). Orders `j <= 1` are
/// rejected: no estimator is stable there. Orders `j > 2` are outside the
/// scope of the two-point difference and are rejected as well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessClass {
    j: f64,
    mj: f64,
}

impl SmoothnessClass {
    pub fn new(j: f64, mj: f64) -> Result<Self> {
        if !j.is_finite() || j <= 1.0 {
            return Err(Error::UnstableOrder { j });
        }
        if j > 2.0 {
            return Err(Error::InvalidParameter(format!(
                "smoothness order j must lie in (1, 2], got {j}"
            )));
        }
        if !(mj > 0.0) || !mj.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "norm bound m_j must be positive and finite, got {mj}"
            )));
        }
        Ok(SmoothnessClass { j, mj })
    }

    /// The `j = 2` class with `||f''||_inf <= m2`.
    pub fn second_derivative(m2: f64) -> Result<Self> {
        Self::new(2.0, m2)
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn mj(&self) -> f64 {
        self.mj
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "noise level delta must be positive, got {delta}"
        )));
    }
    Ok(())
}

/// The optimal stepsize `h_j(delta)`.
///
/// For `j in (1, 2)` this is `(delta / (m_j (j-1)))^(1/j)`; for `j = 2` the
/// sharper Taylor-based penalty gives `sqrt(2 delta / m_2)`.
pub fn optimal_step(delta: f64, cls: &SmoothnessClass) -> Result<f64> {
    check_delta(delta)?;
    if cls.j == 2.0 {
        Ok((2.0 * delta / cls.mj).sqrt())
    } else {
        Ok((delta / (cls.mj * (cls.j - 1.0))).powf(1.0 / cls.j))
    }
}

/// Worst-case sup-norm error guarantee `eps(delta)` at the optimal stepsize.
///
/// `c_j delta^((j-1)/j)` with `c_j = j m_j^(1/j) / (j-1)^((j-1)/j)` for
/// `j in (1, 2)`, and `sqrt(2 m_2 delta)` for `j = 2`.
pub fn error_bound(delta: f64, cls: &SmoothnessClass) -> Result<f64> {
    check_delta(delta)?;
    if cls.j == 2.0 {
        Ok((2.0 * cls.mj * delta).sqrt())
    } else {
        let e = (cls.j - 1.0) / cls.j;
        let cj = cls.j * cls.mj.powf(1.0 / cls.j) / (cls.j - 1.0).powf(e);
        Ok(cj * delta.powf(e))
    }
}

/// The stepsize penalty whose minimizer is [`optimal_step`]:
/// noise amplification `delta/h` plus the truncation term.
///
/// For `j = 2` the truncation term is `m_2 h / 2`; for `j in (1, 2)` it is
/// `m_j h^(j-1)`.
pub fn step_penalty(h: f64, delta: f64, cls: &SmoothnessClass) -> f64 {
    let trunc = if cls.j == 2.0 {
        0.5 * cls.mj * h
    } else {
        cls.mj * h.powf(cls.j - 1.0)
    };
    delta / h + trunc
}

/// Symmetric divided difference `(f(x+h) - f(x-h)) / (2h)` on the periodic
/// grid. `h` must be a positive integer multiple of `dx` and `x` must lie on
/// the grid; both are enforced, since evaluating anywhere else would require
/// interpolation.
pub fn central_difference(signal: &SampledSignal, x: f64, h: f64) -> Result<f64> {
    let steps = h / signal.dx;
    let k = steps.round();
    if k < 1.0 || (steps - k).abs() > GRID_SNAP_TOL * (1.0 + steps.abs()) {
        return Err(Error::StepNotGridMultiple { h, dx: signal.dx });
    }
    let i = signal.index_of(x)?;
    let k = k as i64;
    Ok((signal.sample(i + k) - signal.sample(i - k)) / (2.0 * h))
}

/// Result of [`differentiate`]: the derivative estimate at every grid point
/// plus the stepsize actually used and the guaranteed error bound.
#[derive(Debug, Clone)]
pub struct DiffReport {
    /// Estimate of `f'` at each grid point.
    pub derivative: Vec<f64>,
    /// Stepsize used: the ideal one snapped to the nearest grid multiple.
    pub h_used: f64,
    /// The unconstrained optimal stepsize `h_j(delta)`.
    pub h_ideal: f64,
    /// Guaranteed sup-norm error, evaluated at `h_used` (never at the ideal).
    pub bound: f64,
    /// `bound - penalty(h_ideal)`: the price of snapping to the grid.
    pub snapping_slack: f64,
}

/// Differentiates a noisy periodic signal with the optimal stepsize.
///
/// The ideal `h_j(delta)` is snapped to the nearest positive multiple of
/// `dx`; the reported bound uses the snapped value. Errors if no multiple of
/// `dx` lies within a factor 2 of the ideal stepsize (grid too coarse).
pub fn differentiate(signal: &SampledSignal, cls: &SmoothnessClass) -> Result<DiffReport> {
    let delta = signal.delta;
    let h_ideal = optimal_step(delta, cls)?;
    let k = (h_ideal / signal.dx).round().max(1.0);
    let h_used = k * signal.dx;
    if h_used < 0.5 * h_ideal || h_used > 2.0 * h_ideal {
        return Err(Error::GridTooCoarse {
            h_ideal,
            required_dx: 2.0 * h_ideal,
            dx: signal.dx,
        });
    }
    let k = k as i64;
    let derivative = (0..signal.len() as i64)
        .map(|i| (signal.sample(i + k) - signal.sample(i - k)) / (2.0 * h_used))
        .collect();
    let bound = step_penalty(h_used, delta, cls);
    Ok(DiffReport {
        derivative,
        h_used,
        h_ideal,
        bound,
        snapping_slack: bound - step_penalty(h_ideal, delta, cls),
    })
}

/// The two-function adversarial pair used to show the `j = 2` bound sharp.
///
/// With `f_delta = 0`, both `f_1` and `f_2 = -f_1` are admissible
/// (`||f_s||_inf = m h^2 / 2 = delta`), yet their derivatives at 0 differ by
/// `2 m h`, so no operator can beat error `m h = sqrt(2 delta m)`.
///
/// The core arch is `f_1(x) = -m x (x - 2h) / 2` on `[0, 2h]`. Outside it the
/// function continues so that all three sup-norms are attained on `[0, 2h]`:
/// the arch is point-reflected about each endpoint until the slope vanishes
/// (at `-h` and `3h`, where the value is `-delta`), then held constant. The
/// result is C^1 with `|f| <= delta`, `|f'| <= mh`, `|f''| <= m` everywhere.
/// (A mirror-image "even" reflection would kink `f'` at 0 and destroy the
/// second-derivative bound; the extension is not unique, this is one valid
/// choice.)
#[derive(Debug, Clone, Copy)]
pub struct AdversarialPair {
    m: f64,
    delta: f64,
    h: f64,
}

impl AdversarialPair {
    pub fn new(m: f64, delta: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::InvalidParameter(format!("m must be positive, got {m}")));
        }
        check_delta(delta)?;
        Ok(AdversarialPair { m, delta, h: (2.0 * delta / m).sqrt() })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `h = sqrt(2 delta / m)`.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn f1(&self, x: f64) -> f64 {
        let (m, h) = (self.m, self.h);
        if x < -h {
            -self.delta
        } else if x < 0.0 {
            0.5 * m * x * (x + 2.0 * h)
        } else if x <= 2.0 * h {
            -0.5 * m * x * (x - 2.0 * h)
        } else if x <= 3.0 * h {
            0.5 * m * (4.0 * h - x) * (2.0 * h - x)
        } else {
            -self.delta
        }
    }

    pub fn f2(&self, x: f64) -> f64 {
        -self.f1(x)
    }

    pub fn f1_prime(&self, x: f64) -> f64 {
        let (m, h) = (self.m, self.h);
        if x < -h {
            0.0
        } else if x < 0.0 {
            m * (x + h)
        } else if x <= 2.0 * h {
            -m * (x - h)
        } else if x <= 3.0 * h {
            m * (x - 3.0 * h)
        } else {
            0.0
        }
    }
}

/// Worst error of an estimator that outputs `b` at 0 when the data is
/// identically zero: `max(|b - mh|, |b + mh|)` with `h = sqrt(2 delta / m)`.
///
/// Always `>= m h = sqrt(2 delta m)`, with equality at `b = 0`; this is the
/// scalar to which the infimum over all estimators collapses.
pub fn lower_bound_check(estimate_at_zero: f64, m: f64, delta: f64) -> f64 {
    let mh = m * (2.0 * delta / m).sqrt();
    (estimate_at_zero - mh).abs().max((estimate_at_zero + mh).abs())
}

/// Evaluates [`lower_bound_check`] at `n` seeded random estimates and
/// returns `(best_value, best_b)`; the best value never drops below
/// `sqrt(2 delta m)`.
pub fn lower_bound_sweep(m: f64, delta: f64, n: usize, seed: u64) -> Result<(f64, f64)> {
    use rand::{Rng, SeedableRng};
    if !(m > 0.0) {
        return Err(Error::InvalidParameter(format!("m must be positive, got {m}")));
    }
    check_delta(delta)?;
    let gamma = (2.0 * delta * m).sqrt();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut best = (f64::INFINITY, 0.0);
    for _ in 0..n {
        let b = rng.gen_range(-10.0 * gamma..10.0 * gamma);
        let v = lower_bound_check(b, m, delta);
        if v < best.0 {
            best = (v, b);
        }
    }
    Ok(best)
}
