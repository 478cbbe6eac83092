//! Self-contained acceptance experiments.
//!
//! Each criterion runs a fixed, seeded experiment with pinned tolerances and
//! reports pass/fail plus a one-line summary. The `acceptance` integration
//! test asserts every criterion; the CLI `repro` subcommand prints the same
//! table.

use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::noise::{synth_noise, NoisePattern};
use crate::propc::{
    approximate_by_products, blowup_study, ComplexDirection, DomainQuadrature,
};
use crate::quad::Panels;
use crate::radon::{
    cone_kernel_config, fill_spectral_cone, radon_transform, AngularSector, Disc, LineRule,
    Phantom,
};
use crate::specext::{
    convolution_image_1d, delta_sequence_check, extrapolate, DeltaKernel, DeltaSeqConfig,
    EvalGrid, Mollifier, Region, SpectralSamples, SpectralWindow,
};
use crate::stablediff::{
    differentiate, lower_bound_check, AdversarialPair, SampledSignal, SmoothnessClass,
};

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionReport {
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {} [{}] {} ({:.2}s / budget {:.0}s): {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.budget.as_secs_f64(),
            self.details
        )
    }
}

pub const CRITERIA: [(usize, &str); 9] = [
    (1, "differentiation-bound"),
    (2, "sharpness"),
    (3, "rate-check"),
    (4, "delta-type-property"),
    (5, "extrapolation-rate"),
    (6, "projection-slice"),
    (7, "limited-angle-reconstruction"),
    (8, "density-of-products"),
    (9, "coefficient-blowup"),
];

/// Relative L2 reconstruction error of the limited-angle experiment at
/// j = 32, recorded on the first run of criterion 7 and pinned to +-10%.
pub const LIMITED_ANGLE_REGRESSION_J32: f64 = 0.6878;

type CriterionFn = fn() -> (bool, String);

/// Runs one criterion by id.
pub fn run(id: usize) -> Option<CriterionReport> {
    let (f, name, budget): (CriterionFn, &'static str, u64) = match id {
        1 => (criterion_1, CRITERIA[0].1, 10),
        2 => (criterion_2, CRITERIA[1].1, 1),
        3 => (criterion_3, CRITERIA[2].1, 30),
        4 => (criterion_4, CRITERIA[3].1, 30),
        5 => (criterion_5, CRITERIA[4].1, 60),
        6 => (criterion_6, CRITERIA[5].1, 30),
        7 => (criterion_7, CRITERIA[6].1, 180),
        8 => (criterion_8, CRITERIA[7].1, 60),
        9 => (criterion_9, CRITERIA[8].1, 60),
        _ => return None,
    };
    let start = Instant::now();
    let (passed, details) = f();
    Some(CriterionReport {
        id,
        name,
        passed,
        details,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget),
    })
}

/// Runs all nine criteria in order.
pub fn run_all() -> Vec<CriterionReport> {
    (1..=9).map(|id| run(id).expect("known id")).collect()
}

// ----------------------------------------------------------- criterion 1

/// f = sin on [0, 2 pi), 4096 samples, j = 2, m2 = 1, delta in {1e-2, 1e-4}:
/// over 1000 uniform draws plus the alternating pattern, the max grid error
/// never exceeds sqrt(2 delta) + snapping slack.
fn criterion_1() -> (bool, String) {
    let n = 4096;
    let dx = 2.0 * std::f64::consts::PI / n as f64;
    let cls = SmoothnessClass::second_derivative(1.0).unwrap();
    let clean = SampledSignal::from_fn(f64::sin, 0.0, dx, n, 0.0).unwrap();
    let mut worst_margin = f64::INFINITY;
    let mut max_err: f64 = 0.0;
    for &delta in &[1e-2, 1e-4] {
        let base = clean.clone().with_delta(delta);
        let sqrt_bound = (2.0 * delta).sqrt();
        let mut trial = |noisy: &SampledSignal| -> bool {
            let rep = differentiate(noisy, &cls).unwrap();
            // bound must decompose as sqrt(2 delta m2) + slack
            debug_assert!((rep.bound - rep.snapping_slack - sqrt_bound).abs() < 1e-12);
            let err = rep
                .derivative
                .iter()
                .enumerate()
                .map(|(i, d)| (d - noisy.grid_x(i).cos()).abs())
                .fold(0.0f64, f64::max);
            max_err = max_err.max(err);
            worst_margin = worst_margin.min(rep.bound - err);
            err <= rep.bound
        };
        for seed in 0..1000u64 {
            let noisy = synth_noise(&base, delta, seed, NoisePattern::Uniform);
            if !trial(&noisy) {
                return (false, format!("bound violated at delta={delta}, seed={seed}"));
            }
        }
        let alt = synth_noise(&base, delta, 0, NoisePattern::Alternating);
        if !trial(&alt) {
            return (false, format!("bound violated by alternating noise at delta={delta}"));
        }
    }
    (
        true,
        format!(
            "2002 trials within bound; worst margin {worst_margin:.3e}, max error {max_err:.4}"
        ),
    )
}

// ----------------------------------------------------------- criterion 2

/// With zero data the central-difference estimate at 0 is 0, and its error
/// on each adversarial function equals sqrt(2 delta m) to 1e-12 relative;
/// lower_bound_check(b) >= sqrt(2 delta m) for 1e4 random b.
fn criterion_2() -> (bool, String) {
    use rand::{Rng, SeedableRng};
    for (m, delta) in [(1.0, 1e-4), (2.0, 0.3), (0.5, 1e-2)] {
        let pair = AdversarialPair::new(m, delta).unwrap();
        let gamma = (2.0 * delta * m).sqrt();
        let estimate = 0.0; // L_delta on the zero function
        let err1 = (estimate - pair.f1_prime(0.0)).abs();
        let err2 = (estimate - (-pair.f1_prime(0.0))).abs();
        if (err1 - gamma).abs() > 1e-12 * gamma || (err2 - gamma).abs() > 1e-12 * gamma {
            return (false, format!("sharpness off at m={m}, delta={delta}"));
        }
        // admissibility of the pair
        if (pair.f1(pair.h()) - delta).abs() > 1e-12 * delta {
            return (false, "adversarial sup-norm is not delta".into());
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let (m, delta) = (1.7f64, 3e-3f64);
    let gamma = (2.0 * delta * m).sqrt();
    let mut min_ratio = f64::INFINITY;
    for _ in 0..10_000 {
        let b = rng.gen_range(-10.0..10.0);
        let v = lower_bound_check(b, m, delta);
        min_ratio = min_ratio.min(v / gamma);
        if v < gamma * (1.0 - 1e-12) {
            return (false, format!("estimator b={b} beat the lower bound"));
        }
    }
    (
        true,
        format!("error equals sqrt(2 delta m) exactly; min ratio over 1e4 draws {min_ratio:.6}"),
    )
}

// ----------------------------------------------------------- criterion 3

/// For j in {1.25, 1.5, 1.75} the measured worst-case error over the noise
/// ensemble scales in delta with exponent within +-0.1 of (j-1)/j.
fn criterion_3() -> (bool, String) {
    let n = 65_536;
    let dx = 2.0 * std::f64::consts::PI / n as f64;
    let clean = SampledSignal::from_fn(f64::sin, 0.0, dx, n, 0.0).unwrap();
    let deltas = [1e-2, 1e-3, 1e-4];
    let mut details = String::new();
    for &j in &[1.25, 1.5, 1.75] {
        // Hoelder-class bound for sin: ||f'|| + seminorm(cos) <= 1 + 2
        let cls = SmoothnessClass::new(j, 3.0).unwrap();
        let mut ln_d = Vec::new();
        let mut ln_e = Vec::new();
        for &delta in &deltas {
            let base = clean.clone().with_delta(delta);
            let mut worst = 0.0f64;
            let mut measure = |noisy: &SampledSignal| {
                let rep = differentiate(noisy, &cls).unwrap();
                let err = rep
                    .derivative
                    .iter()
                    .enumerate()
                    .map(|(i, d)| (d - noisy.grid_x(i).cos()).abs())
                    .fold(0.0f64, f64::max);
                worst = worst.max(err);
            };
            for seed in 0..200u64 {
                measure(&synth_noise(&base, delta, seed, NoisePattern::Uniform));
            }
            measure(&synth_noise(&base, delta, 0, NoisePattern::Alternating));
            ln_d.push(delta.ln());
            ln_e.push(worst.ln());
        }
        let slope = fit_slope(&ln_d, &ln_e);
        let target = (j - 1.0) / j;
        if (slope - target).abs() > 0.1 {
            return (
                false,
                format!("j={j}: fitted exponent {slope:.3} vs target {target:.3}"),
            );
        }
        details.push_str(&format!("j={j}: {slope:.3} (target {target:.3}); "));
    }
    (true, details)
}

fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

// ----------------------------------------------------------- criterion 4

/// Default 1D kernel config: the integral over [-0.5, 0.5] reaches within
/// 5% of 1 by j = 64, the integral over [2, 3] stays within 5% of 0, and
/// all window integrals share a uniform bound across the ladder.
fn criterion_4() -> (bool, String) {
    let w = SpectralWindow::interval(-16.0, 16.0, 160, 10).unwrap();
    let m = Mollifier::new(&w, [0.0, 0.0], 0.8).unwrap();
    let base = DeltaSeqConfig::new(4, 1.0, 1.25, m).unwrap();
    let regions = vec![
        Region::Interval { lo: -0.5, hi: 0.5 },
        Region::Interval { lo: 2.0, hi: 3.0 },
    ];
    let report = delta_sequence_check(&base, &[4, 8, 16, 32, 64], &regions).unwrap();
    let near_final = report.rows.last().unwrap().integrals[0];
    let far_final = report.rows.last().unwrap().integrals[1];
    if (near_final - 1.0).abs() > 0.05 {
        return (false, format!("integral near 0 reached {near_final:.4}, not within 5% of 1"));
    }
    if far_final.abs() > 0.05 {
        return (false, format!("integral away from 0 is {far_final:.2e}, not within 5% of 0"));
    }
    // the integrals climb monotonically toward 1 on the ladder
    let near: Vec<f64> = report.rows.iter().map(|r| r.integrals[0]).collect();
    if !near.windows(2).all(|w| w[1] >= w[0]) {
        return (false, format!("near-zero integrals not monotone: {near:?}"));
    }
    if report.uniform_bound > 1.1 {
        return (false, format!("uniform bound {} exceeds 1.1", report.uniform_bound));
    }
    (
        true,
        format!(
            "I[-0.5,0.5] at j=64: {near_final:.4}; I[2,3]: {far_final:.2e}; \
             uniform bound {:.4}",
            report.uniform_bound
        ),
    )
}

// ----------------------------------------------------------- criterion 5

/// 1D smooth bump fixture: error ladder over j in {4,...,64} has log-log
/// slope <= -0.4 and is nonincreasing (2% slack); the convolution and
/// spectral pipelines agree within 10x the base quadrature tolerance, and
/// doubling the window quadrature moves the result by < 1e-6.
fn criterion_5() -> (bool, String) {
    let fixture = crate::bump::profile;
    let window = SpectralWindow::interval(-16.0, 16.0, 160, 10).unwrap();
    let mollifier = Mollifier::new(&window, [0.0, 0.0], 0.8).unwrap();
    let fq = Panels::new(-1.0, 1.0, 24, 12);
    let transform = |xi: [f64; 2]| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (y, wt) in fq.iter() {
            acc += wt * fixture(y) * Complex64::cis(xi[0] * y);
        }
        acc
    };
    let samples = SpectralSamples::from_fn(window.clone(), transform);
    let grid = EvalGrid::line(-1.0, 1.0, 81);
    let xs: Vec<f64> = grid.points().map(|p| p[0]).collect();
    let ladder = [4u32, 8, 16, 32, 64];
    let mut errs = Vec::new();
    let mut agree_worst = 0.0f64;
    for &j in &ladder {
        let cfg = DeltaSeqConfig::new(j, 1.0, 1.25, mollifier.clone()).unwrap();
        let kernel = DeltaKernel::for_window(&cfg, &window).unwrap();
        let spec = extrapolate(&samples, &kernel, &grid).unwrap();
        let conv = convolution_image_1d(fixture, 1.0, &kernel, &xs);
        let agree = spec
            .values
            .iter()
            .zip(&conv)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        agree_worst = agree_worst.max(agree);
        if agree > 1e-5 {
            return (false, format!("pipelines disagree by {agree:.2e} at j={j}"));
        }
        let err = spec
            .values
            .iter()
            .zip(&xs)
            .map(|(v, &x)| (v.re - fixture(x)).abs())
            .fold(0.0f64, f64::max);
        errs.push(err);
    }
    for w in errs.windows(2) {
        if w[1] > w[0] * 1.02 {
            return (false, format!("error ladder not monotone: {errs:?}"));
        }
    }
    let ln_j: Vec<f64> = ladder.iter().map(|&j| (j as f64).ln()).collect();
    let ln_e: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let slope = fit_slope(&ln_j, &ln_e);
    if slope > -0.4 {
        return (false, format!("rate slope {slope:.3} > -0.4; errors {errs:?}"));
    }
    // quadrature stability: doubled window resolution moves the j=16 image
    // by less than 1e-6
    let window2 = SpectralWindow::interval(-16.0, 16.0, 320, 10).unwrap();
    let samples2 = SpectralSamples::from_fn(window2.clone(), transform);
    let cfg = DeltaSeqConfig::new(16, 1.0, 1.25, mollifier).unwrap();
    let k1 = DeltaKernel::for_window(&cfg, &window).unwrap();
    let k2 = DeltaKernel::for_window(&cfg, &window2).unwrap();
    let f1 = extrapolate(&samples, &k1, &grid).unwrap();
    let f2 = extrapolate(&samples2, &k2, &grid).unwrap();
    let drift = f1
        .values
        .iter()
        .zip(&f2.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    if drift > 1e-6 {
        return (false, format!("doubling the window quadrature moved the image by {drift:.2e}"));
    }
    (
        true,
        format!(
            "slope {slope:.3}; errors {:?}; pipeline agreement {agree_worst:.2e}; \
             doubling drift {drift:.2e}",
            errs.iter().map(|e| (e * 1e4).round() / 1e4).collect::<Vec<_>>()
        ),
    )
}

// ----------------------------------------------------------- criterion 6

/// Disc phantom: the slice transform matches the direct transform within
/// 1e-2 relative for |t| <= 8 at 5 directions.
fn criterion_6() -> (bool, String) {
    let phantom = Phantom::new(
        vec![Disc { center: [0.2, -0.15], radius: 0.6, weight: 1.0 }],
        1.0,
    )
    .unwrap();
    let sector = AngularSector::new(
        std::f64::consts::PI / 6.0,
        5.0 * std::f64::consts::PI / 6.0,
        5,
    )
    .unwrap();
    let sino = radon_transform(&phantom, sector, 801, LineRule::ClosedForm).unwrap();
    let mut worst_rel = 0.0f64;
    for (ai, alpha) in sector.angles().iter().enumerate() {
        let d = [alpha.cos(), alpha.sin()];
        let mut scale = 0.0f64;
        let mut worst = 0.0f64;
        for k in -32..=32 {
            let t = k as f64 * 0.25;
            let sl = crate::radon::slice_to_fourier(&sino, ai, t).unwrap();
            let dr = phantom.forward_transform([t * d[0], t * d[1]]);
            scale = scale.max(dr.norm());
            worst = worst.max((sl - dr).norm());
        }
        worst_rel = worst_rel.max(worst / scale);
    }
    if worst_rel > 1e-2 {
        return (false, format!("slice vs direct relative error {worst_rel:.3e} > 1e-2"));
    }
    (true, format!("5 directions, |t| <= 8: worst relative deviation {worst_rel:.3e}"))
}

// ----------------------------------------------------------- criterion 7

/// 120-degree sector, disc phantom: reconstruction error nonincreasing over
/// j in {4, 8, 16, 32}; the final error is pinned to the recorded
/// regression value within +-10%.
fn criterion_7() -> (bool, String) {
    let phantom = Phantom::new(
        vec![Disc { center: [0.15, -0.1], radius: 0.55, weight: 1.0 }],
        1.0,
    )
    .unwrap();
    let sector = AngularSector::new(
        std::f64::consts::PI / 6.0,
        5.0 * std::f64::consts::PI / 6.0,
        40,
    )
    .unwrap();
    let sino = radon_transform(&phantom, sector, 1601, LineRule::ClosedForm).unwrap();
    let samples = fill_spectral_cone(&sino, 8.0, 16, 10).unwrap();
    let grid = EvalGrid::raster([-1.0, -1.0], [1.0, 1.0], 48);
    let truth: Vec<f64> = grid.points().map(|p| phantom.eval(p)).collect();
    let truth_norm = truth.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut errs = Vec::new();
    let mut max_im = 0.0f64;
    for &j in &[4u32, 8, 16, 32] {
        let cfg = cone_kernel_config(j, 1.0, &sector, 8.0, samples.window()).unwrap();
        let kernel = DeltaKernel::for_window(&cfg, samples.window()).unwrap();
        let field = extrapolate(&samples, &kernel, &grid).unwrap();
        max_im = max_im.max(field.max_imag());
        let err = field
            .values
            .iter()
            .zip(&truth)
            .map(|(v, t)| (v.re - t) * (v.re - t))
            .sum::<f64>()
            .sqrt()
            / truth_norm;
        errs.push(err);
    }
    for w in errs.windows(2) {
        if w[1] > w[0] * 1.02 {
            return (false, format!("ladder not monotone: {errs:?}"));
        }
    }
    let final_err = *errs.last().unwrap();
    let rel_drift = (final_err - LIMITED_ANGLE_REGRESSION_J32).abs() / LIMITED_ANGLE_REGRESSION_J32;
    if rel_drift > 0.10 {
        return (
            false,
            format!(
                "final error {final_err:.4} drifted {:.1}% from pinned {}",
                rel_drift * 100.0,
                LIMITED_ANGLE_REGRESSION_J32
            ),
        );
    }
    (
        true,
        format!(
            "errors {:?}; final {final_err:.4} within 10% of pinned {}; max imag {max_im:.1e}",
            errs.iter().map(|e| (e * 1e4).round() / 1e4).collect::<Vec<_>>(),
            LIMITED_ANGLE_REGRESSION_J32
        ),
    )
}

// ----------------------------------------------------------- criterion 8

/// Products of harmonic polynomials: the residual for exp(x1) cos(3 x2)
/// decreases strictly over N in {2, 4, 6, 8}; exact-identity fixtures reach
/// residual < 1e-8.
fn criterion_8() -> (bool, String) {
    let quad = DomainQuadrature::disc(1.0, 8, 40).unwrap();
    let exact1 = approximate_by_products(|p| p[0], &quad, &[1]).unwrap();
    if exact1[0].residual >= 1e-8 {
        return (false, format!("harmonic fixture residual {:.2e}", exact1[0].residual));
    }
    let exact2 =
        approximate_by_products(|p| p[0] * p[0] + p[1] * p[1], &quad, &[2]).unwrap();
    if exact2[0].residual >= 1e-8 {
        return (false, format!("|x|^2 fixture residual {:.2e}", exact2[0].residual));
    }
    let rows = approximate_by_products(
        |p| p[0].exp() * (3.0 * p[1]).cos(),
        &quad,
        &[2, 4, 6, 8],
    )
    .unwrap();
    for w in rows.windows(2) {
        if !(w[1].residual < w[0].residual) {
            return (
                false,
                format!(
                    "residual not strictly decreasing: N={} gives {:.3e}, N={} gives {:.3e}",
                    w[0].degree, w[0].residual, w[1].degree, w[1].residual
                ),
            );
        }
    }
    let summary: Vec<String> = rows
        .iter()
        .map(|r| format!("N={}: {:.3e} (rank {}/{})", r.degree, r.residual, r.effective_rank, r.dictionary_size))
        .collect();
    (true, summary.join(", "))
}

// ----------------------------------------------------------- criterion 9

/// Coefficient blow-up: at t = 1 the norm strictly increases through the
/// residual ladder {1e-1, 3e-2, 1e-2, 3e-3}; at t = 0 it stays bounded
/// (last/first < 2).
fn criterion_9() -> (bool, String) {
    let quad = DomainQuadrature::disc(1.0, 12, 48).unwrap();
    let targets = [1e-1, 3e-2, 1e-2, 3e-3];
    let rows = blowup_study(&[0.0, 1.0], &targets, 64, &quad).unwrap();
    let (t0, t1) = rows.split_at(targets.len());
    if t0.iter().any(|r| !r.feasible) || t1.iter().any(|r| !r.feasible) {
        return (false, "a residual target was unreachable".into());
    }
    let ratio = t0.last().unwrap().coeff_norm / t0[0].coeff_norm;
    if !(ratio < 2.0) {
        return (false, format!("t=0 norms not bounded: last/first = {ratio:.3}"));
    }
    for w in t1.windows(2) {
        if !(w[1].coeff_norm > w[0].coeff_norm) {
            return (
                false,
                format!(
                    "t=1 norms not strictly increasing: {} then {}",
                    w[0].coeff_norm, w[1].coeff_norm
                ),
            );
        }
    }
    // psi with t = 0 is a plane wave: also check the trivial direction
    let dir = ComplexDirection::new(0.0).unwrap();
    let dot = dir.theta_dot_theta();
    if (dot.re - 1.0).abs() > 1e-12 || dot.im.abs() > 1e-12 {
        return (false, "theta.theta drifted off the variety".into());
    }
    let norms1: Vec<f64> = t1.iter().map(|r| (r.coeff_norm * 100.0).round() / 100.0).collect();
    (
        true,
        format!("t=0 ratio {ratio:.3}; t=1 norms {norms1:?} strictly increasing"),
    )
}
