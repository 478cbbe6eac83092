//! Delta-type kernels `delta_j(x) = P_j(|x|^2) g(x)` and their spectra.
//!
//! `g` is the inverse Fourier transform of the window mollifier, so
//! `g(0) = 1` and `g` decays; `P_j(r) = (j/(4 pi a1^2))^{n/2} (1 - r/(4 a1^2))^j`
//! concentrates like a Gaussian of width `a1 sqrt(2/j)` as `j` grows. On the
//! ball `|x| <= 2 a1` the kernel is an approximate identity.
//!
//! The kernel spectrum used downstream is that of the kernel *truncated to*
//! `|x| <= R` with `2a <= R <= 2 sqrt(2) a1`. Within that range the
//! polynomial factor is bounded by its value at 0, so the spectrum is
//! numerically tame for every `j`, and the reconstruction identity
//! `f * (delta_j 1_{B_R}) = f * delta_j` holds exactly on `B_a` because the
//! convolution never samples the kernel beyond `2a`. Outside that range the
//! factor `(1 - r/(4 a1^2))^j` grows without bound and the spectrum integral
//! loses all significance in floating point; such radii are rejected.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::Panels;
use crate::specext::mollifier::Mollifier;
use crate::specext::window::SpectralWindow;

/// Polynomial damping factor `P_j`.
pub fn pj(r: f64, j: u32, a1: f64, dim: usize) -> f64 {
    let scale = (j as f64 / (4.0 * std::f64::consts::PI * a1 * a1)).powf(dim as f64 / 2.0);
    scale * (1.0 - r / (4.0 * a1 * a1)).powi(j as i32)
}

/// How to evaluate the truncated-kernel spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    /// Direct panel quadrature of `int_{|x|<=R} delta_j(x) e^{i xi.x} dx`.
    Quadrature,
    /// Binomial expansion in the moments `M_{2k}(xi) = int_{|x|<=R} x^{2k} g e^{i xi x} dx`,
    /// each moment reduced to closed-form windowed moment kernels convolved
    /// with the mollifier. Independent of the quadrature route; 1D, `j <= 8`.
    MomentExpansion,
}

/// Parameters of the kernel family.
#[derive(Debug, Clone)]
pub struct DeltaSeqConfig {
    j: u32,
    support_radius: f64,
    a1: f64,
    mollifier: Mollifier,
    truncation_radius: f64,
    spectrum_method: SpectrumMethod,
}

impl DeltaSeqConfig {
    /// `a` is the support radius of the functions to be reconstructed;
    /// `a1 > a` strictly. Truncation defaults to `2 a1` (where the
    /// polynomial factor vanishes) and the spectrum method to quadrature.
    pub fn new(j: u32, a: f64, a1: f64, mollifier: Mollifier) -> Result<Self> {
        if j < 1 {
            return Err(Error::InvalidParameter("kernel order j must be >= 1".into()));
        }
        if !(a > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "support radius a must be positive, got {a}"
            )));
        }
        if !(a1 > a) {
            return Err(Error::InvalidParameter(format!(
                "a1 must exceed the support radius a (got a1 = {a1}, a = {a})"
            )));
        }
        let cfg = DeltaSeqConfig {
            j,
            support_radius: a,
            a1,
            mollifier,
            truncation_radius: 2.0 * a1,
            spectrum_method: SpectrumMethod::Quadrature,
        };
        Ok(cfg)
    }

    /// Override the spatial cutoff `R` of the kernel-spectrum quadrature.
    ///
    /// Valid range `[2a, 2 sqrt(2) a1]`: below `2a` the reconstruction
    /// identity on `B_a` breaks; above `2 sqrt(2) a1` the polynomial factor
    /// exceeds its central value and grows like `(r/(4a1^2) - 1)^j`, which
    /// destroys the spectrum quadrature for large `j`. Widening the cutoff
    /// never helps: past the valid range the integrand only grows.
    pub fn with_truncation_radius(mut self, r: f64) -> Result<Self> {
        let lo = 2.0 * self.support_radius;
        let hi = 2.0 * std::f64::consts::SQRT_2 * self.a1;
        if !(r >= lo && r <= hi) {
            return Err(Error::Config(format!(
                "truncation radius {r} outside the usable range [{lo:.6}, {hi:.6}]; \
                 the kernel tail beyond {hi:.6} grows like (r^2/(4 a1^2) - 1)^j and \
                 cannot be integrated at this j"
            )));
        }
        self.truncation_radius = r;
        Ok(self)
    }

    pub fn with_spectrum_method(mut self, method: SpectrumMethod) -> Result<Self> {
        if method == SpectrumMethod::MomentExpansion {
            if self.mollifier.dim() != 1 {
                return Err(Error::Config(
                    "the moment-expansion spectrum is implemented in 1D only".into(),
                ));
            }
            if self.j > 8 {
                return Err(Error::Config(format!(
                    "the moment-expansion spectrum is limited to j <= 8 (got {}); \
                     the windowed moment kernels lose significance beyond that",
                    self.j
                )));
            }
        }
        self.spectrum_method = method;
        Ok(self)
    }

    pub fn with_j(mut self, j: u32) -> Result<Self> {
        if j < 1 {
            return Err(Error::InvalidParameter("kernel order j must be >= 1".into()));
        }
        self.j = j;
        if self.spectrum_method == SpectrumMethod::MomentExpansion && j > 8 {
            return Err(Error::Config(
                "moment-expansion spectrum is limited to j <= 8".into(),
            ));
        }
        Ok(self)
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn mollifier(&self) -> &Mollifier {
        &self.mollifier
    }

    pub fn truncation_radius(&self) -> f64 {
        self.truncation_radius
    }

    pub fn spectrum_method(&self) -> SpectrumMethod {
        self.spectrum_method
    }

    pub fn dim(&self) -> usize {
        self.mollifier.dim()
    }

    /// Radius beyond which `|P_j|` exceeds `P_j(0)`; kernel evaluations and
    /// check regions must stay inside it.
    pub fn tame_radius(&self) -> f64 {
        2.0 * std::f64::consts::SQRT_2 * self.a1
    }
}

/// A kernel ready for evaluation: caches the mollifier transform at the
/// quadrature nodes it needs.
#[derive(Debug, Clone)]
pub struct DeltaKernel {
    cfg: DeltaSeqConfig,
    /// 1D: mollifier nodes and weighted values for evaluating `g`.
    h_nodes: Vec<f64>,
    h_weighted: Vec<f64>,
    /// 1D: spatial quadrature over `[-R, R]` with cached `g`.
    zq: Panels,
    g_at_zq: Vec<Complex64>,
    /// 2D: radial quadrature over `[0, R]` with cached per-bump profile `B`.
    sq: Panels,
    b_at_sq: Vec<f64>,
    /// 2D: radial rule for evaluating `B(s)` pointwise.
    bq: Panels,
    n_phi: usize,
    cos_phi: Vec<f64>,
}

impl DeltaKernel {
    /// Builds a kernel able to evaluate spectra up to frequency ~20.
    pub fn new(cfg: &DeltaSeqConfig) -> Result<Self> {
        Self::with_max_frequency(cfg, 20.0)
    }

    /// Builds a kernel sized for the given window's node frequencies.
    pub fn for_window(cfg: &DeltaSeqConfig, window: &SpectralWindow) -> Result<Self> {
        if window.dim() != cfg.dim() {
            return Err(Error::Config(format!(
                "window dimension {} does not match kernel dimension {}",
                window.dim(),
                cfg.dim()
            )));
        }
        Self::with_max_frequency(cfg, window.max_frequency())
    }

    /// `max_freq` bounds the `|xi|` at which [`DeltaKernel::spectrum`] will
    /// be called; quadrature resolutions are chosen from it.
    pub fn with_max_frequency(cfg: &DeltaSeqConfig, max_freq: f64) -> Result<Self> {
        let r = cfg.truncation_radius;
        let m = &cfg.mollifier;
        let c = m.center();
        let c_norm = c[0].hypot(c[1]);
        let v_max = (max_freq + c_norm).max(1.0);

        let mut kernel = DeltaKernel {
            cfg: cfg.clone(),
            h_nodes: Vec::new(),
            h_weighted: Vec::new(),
            zq: Panels::new(-1.0, 1.0, 1, 1),
            g_at_zq: Vec::new(),
            sq: Panels::new(0.0, 1.0, 1, 1),
            b_at_sq: Vec::new(),
            bq: Panels::new(0.0, 1.0, 1, 1),
            n_phi: 0,
            cos_phi: Vec::new(),
        };

        if cfg.dim() == 1 {
            // nodes covering the support of h (one or two bumps)
            let mut centers = vec![c[0]];
            if m.is_symmetric_pair() {
                centers.push(-c[0]);
            }
            for &cc in &centers {
                let p = Panels::new(cc - m.radius(), cc + m.radius(), 16, 12);
                for (x, w) in p.iter() {
                    kernel.h_nodes.push(x);
                    kernel.h_weighted.push(w * m.eval([x, 0.0]));
                }
            }
            let width = (5.0 / v_max).min(0.4);
            let n_panels = ((2.0 * r) / width).ceil() as usize;
            kernel.zq = Panels::new(-r, r, n_panels.max(10), 10);
            kernel.g_at_zq = kernel.zq.nodes.iter().map(|&z| kernel.g1d(z)).collect();
        } else {
            let phase_max = r * v_max;
            let mut n_phi = (1.4 * phase_max + 32.0).ceil() as usize;
            n_phi += n_phi % 2;
            kernel.n_phi = n_phi;
            kernel.cos_phi = (0..n_phi)
                .map(|k| ((k as f64 + 0.5) * 2.0 * std::f64::consts::PI / n_phi as f64).cos())
                .collect();
            kernel.bq = Panels::new(0.0, m.radius(), 8, 12);
            let width = (5.0 / v_max).min(0.4);
            let n_panels = (r / width).ceil() as usize;
            kernel.sq = Panels::new(0.0, r, n_panels.max(8), 10);
            kernel.b_at_sq = kernel.sq.nodes.iter().map(|&s| kernel.b2d(s)).collect();
        }
        Ok(kernel)
    }

    pub fn config(&self) -> &DeltaSeqConfig {
        &self.cfg
    }

    fn g1d(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&node, &hw) in self.h_nodes.iter().zip(&self.h_weighted) {
            acc += hw * Complex64::cis(-node * x);
        }
        acc / (2.0 * std::f64::consts::PI)
    }

    /// `J_0(z)` as the angular mean of `cos(z cos phi)`; exact to rounding
    /// for the phases this kernel was sized for.
    fn j0(&self, z: f64) -> f64 {
        let mut acc = 0.0;
        for &cp in &self.cos_phi {
            acc += (z * cp).cos();
        }
        acc / self.n_phi as f64
    }

    /// Per-bump radial profile `B(s)` of the 2D mollifier transform,
    /// normalization included: for a single bump `g(x) = e^{-i c.x} B(|x|)`,
    /// for a pair `g(x) = 2 cos(c.x) B(|x|)`.
    fn b2d(&self, s: f64) -> f64 {
        let m = &self.cfg.mollifier;
        let rho = m.radius();
        let acc = self
            .bq
            .iter()
            .map(|(r, w)| w * crate::bump::profile(r / rho) * r * self.j0(r * s))
            .sum::<f64>();
        m.norm_const() * acc / (2.0 * std::f64::consts::PI)
    }

    /// `g(x)`: inverse transform of the mollifier. `g(0) = 1`.
    pub fn g(&self, x: [f64; 2]) -> Complex64 {
        match self.cfg.dim() {
            1 => self.g1d(x[0]),
            _ => {
                let m = &self.cfg.mollifier;
                let c = m.center();
                let b = self.b2d(x[0].hypot(x[1]));
                let phase = c[0] * x[0] + c[1] * x[1];
                if m.is_symmetric_pair() {
                    Complex64::new(2.0 * phase.cos() * b, 0.0)
                } else {
                    Complex64::cis(-phase) * b
                }
            }
        }
    }

    /// The kernel `delta_j(x) = P_j(|x|^2) g(x)`.
    ///
    /// Meaningful for `|x| <= 2 sqrt(2) a1`; beyond that the polynomial
    /// factor exceeds its central value and grows with `j`.
    pub fn eval(&self, x: [f64; 2]) -> Complex64 {
        let r2 = x[0] * x[0] + x[1] * x[1];
        pj(r2, self.cfg.j, self.cfg.a1, self.cfg.dim()) * self.g(x)
    }

    /// Spectrum of the truncated kernel,
    /// `int_{|x| <= R} delta_j(x) e^{i xi.x} dx`, by the configured method.
    pub fn spectrum(&self, xi: [f64; 2]) -> Complex64 {
        match self.cfg.spectrum_method {
            SpectrumMethod::Quadrature => match self.cfg.dim() {
                1 => self.spectrum_quad_1d(xi[0]),
                _ => self.spectrum_quad_2d(xi),
            },
            SpectrumMethod::MomentExpansion => {
                Complex64::new(self.spectrum_moments_1d(xi[0]), 0.0)
            }
        }
    }

    fn spectrum_quad_1d(&self, xi: f64) -> Complex64 {
        let (j, a1) = (self.cfg.j, self.cfg.a1);
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&z, &w), &g) in self.zq.nodes.iter().zip(&self.zq.weights).zip(&self.g_at_zq) {
            acc += w * pj(z * z, j, a1, 1) * g * Complex64::cis(xi * z);
        }
        acc
    }

    fn spectrum_quad_2d(&self, xi: [f64; 2]) -> Complex64 {
        let m = &self.cfg.mollifier;
        let c = m.center();
        let mut total = self.radial_transform([xi[0] - c[0], xi[1] - c[1]]);
        if m.is_symmetric_pair() {
            total += self.radial_transform([xi[0] + c[0], xi[1] + c[1]]);
        }
        Complex64::new(total, 0.0)
    }

    /// `D(v) = int_{|z| <= R} P_j(|z|^2) B(|z|) e^{i v.z} dz`, radial.
    fn radial_transform(&self, v: [f64; 2]) -> f64 {
        let (j, a1) = (self.cfg.j, self.cfg.a1);
        let vn = v[0].hypot(v[1]);
        let mut acc = 0.0;
        for ((&s, &w), &b) in self.sq.nodes.iter().zip(&self.sq.weights).zip(&self.b_at_sq) {
            acc += w * pj(s * s, j, a1, 2) * b * s * self.j0(s * vn);
        }
        2.0 * std::f64::consts::PI * acc
    }

    /// Moment-expansion route (1D): expand `P_j` binomially, reduce each
    /// moment to `M_{2k}(xi) = (1/pi) int h(zeta) K_{2k}(xi - zeta) d zeta`
    /// with `K_m(u) = int_0^R t^m cos(tu) dt` in closed form.
    fn spectrum_moments_1d(&self, xi: f64) -> f64 {
        let j = self.cfg.j as usize;
        let a1 = self.cfg.a1;
        let r = self.cfg.truncation_radius;
        let scale = pj(0.0, self.cfg.j, a1, 1); // (j / 4 pi a1^2)^{1/2}
        let inv_4a1sq = 1.0 / (4.0 * a1 * a1);
        let mut acc = 0.0;
        let mut binom = 1.0;
        for k in 0..=j {
            let m2k: f64 = self
                .h_nodes
                .iter()
                .zip(&self.h_weighted)
                .map(|(&z, &hw)| hw * moment_kernel(2 * k, xi - z, r))
                .sum::<f64>()
                / std::f64::consts::PI;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += binom * sign * inv_4a1sq.powi(k as i32) * m2k;
            binom *= (j - k) as f64 / (k + 1) as f64;
        }
        scale * acc
    }
}

/// `K_m(u) = int_0^R t^m cos(t u) dt`.
///
/// Series for small `|u| R` (cancellation-free), closed form otherwise.
fn moment_kernel(m: usize, u: f64, r: f64) -> f64 {
    let x = u * r;
    if x.abs() < 2.0f64.max(m as f64) {
        // sum_s (-1)^s u^{2s} R^{m+2s+1} / ((2s)! (m+2s+1))
        let mut total = r.powi(m as i32 + 1) / (m as f64 + 1.0);
        let mut term = total;
        let mut s = 0usize;
        loop {
            // term_{s+1} = term_s * (-(uR)^2) / ((2s+1)(2s+2)) * (m+2s+1)/(m+2s+3)
            let t1 = (2 * s + 1) as f64 * (2 * s + 2) as f64;
            term *= -(x * x) / t1 * ((m + 2 * s + 1) as f64 / (m + 2 * s + 3) as f64);
            total += term;
            s += 1;
            if term.abs() < 1e-18 * total.abs().max(1e-300) || s > 200 {
                break;
            }
        }
        total
    } else {
        // Re int_0^R t^m e^{iut} dt
        let iu = Complex64::new(0.0, u);
        let eiru = Complex64::cis(u * r);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut fall = 1.0; // m!/(m-l)!
        let mut iu_pow = iu; // (iu)^{l+1}
        for l in 0..=m {
            acc += ((if l % 2 == 0 { 1.0 } else { -1.0 }) * fall * r.powi((m - l) as i32)) * eiru
                / iu_pow;
            fall *= (m - l) as f64;
            iu_pow *= iu;
        }
        // fall is now m!, iu_pow is (iu)^{m+2}; the tail term uses (iu)^{m+1}
        let sign = if (m + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += sign * fall / (iu_pow / iu);
        acc.re
    }
}

/// A finite region over which the kernel is integrated by
/// [`delta_sequence_check`].
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Interval { lo: f64, hi: f64 },
    Box2 { lo: [f64; 2], hi: [f64; 2] },
}

impl Region {
    pub fn contains_zero(&self) -> bool {
        match self {
            Region::Interval { lo, hi } => *lo <= 0.0 && 0.0 <= *hi,
            Region::Box2 { lo, hi } => (0..2).all(|k| lo[k] <= 0.0 && 0.0 <= hi[k]),
        }
    }

    fn max_radius(&self) -> f64 {
        match self {
            Region::Interval { lo, hi } => lo.abs().max(hi.abs()),
            Region::Box2 { lo, hi } => {
                let x = lo[0].abs().max(hi[0].abs());
                let y = lo[1].abs().max(hi[1].abs());
                x.hypot(y)
            }
        }
    }

    fn dim(&self) -> usize {
        match self {
            Region::Interval { .. } => 1,
            Region::Box2 { .. } => 2,
        }
    }
}

/// One ladder row: `integral of delta_j` over each region.
#[derive(Debug, Clone)]
pub struct DeltaCheckRow {
    pub j: u32,
    pub integrals: Vec<f64>,
}

/// Result of [`delta_sequence_check`].
#[derive(Debug, Clone)]
pub struct DeltaCheckReport {
    pub regions: Vec<Region>,
    pub rows: Vec<DeltaCheckRow>,
    /// `max |integral|` over all rows and regions.
    pub uniform_bound: f64,
    /// Largest imaginary residue seen while integrating (should be rounding).
    pub max_imag: f64,
}

/// Integrates `delta_j` over each region for every `j` in the ladder.
///
/// Regions containing 0 must tend to 1, regions away from 0 to 0, and all
/// integrals stay below a common constant. Regions must lie inside the tame
/// radius `2 sqrt(2) a1`.
pub fn delta_sequence_check(
    base: &DeltaSeqConfig,
    ladder: &[u32],
    regions: &[Region],
) -> Result<DeltaCheckReport> {
    if ladder.is_empty() || regions.is_empty() {
        return Err(Error::InvalidParameter(
            "delta-sequence check needs a nonempty ladder and regions".into(),
        ));
    }
    for region in regions {
        if region.dim() != base.dim() {
            return Err(Error::Config(format!(
                "region {region:?} has wrong dimension for a {}D kernel",
                base.dim()
            )));
        }
        if region.max_radius() > base.tame_radius() {
            return Err(Error::Config(format!(
                "region {region:?} reaches beyond the tame radius {:.4}; the kernel \
                 polynomial factor is unbounded there",
                base.tame_radius()
            )));
        }
    }
    let mut rows = Vec::with_capacity(ladder.len());
    let mut uniform_bound: f64 = 0.0;
    let mut max_imag: f64 = 0.0;
    for &j in ladder {
        let cfg = base.clone().with_j(j)?;
        let kernel = DeltaKernel::new(&cfg)?;
        let mut integrals = Vec::with_capacity(regions.len());
        for region in regions {
            let val = match region {
                Region::Interval { lo, hi } => {
                    let n_panels = (((hi - lo) / 0.1).ceil() as usize).max(8);
                    let p = Panels::new(*lo, *hi, n_panels, 10);
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (x, w) in p.iter() {
                        acc += w * kernel.eval([x, 0.0]);
                    }
                    acc
                }
                Region::Box2 { lo, hi } => {
                    let nx = (((hi[0] - lo[0]) / 0.1).ceil() as usize).max(6);
                    let ny = (((hi[1] - lo[1]) / 0.1).ceil() as usize).max(6);
                    let px = Panels::new(lo[0], hi[0], nx, 8);
                    let py = Panels::new(lo[1], hi[1], ny, 8);
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (x, wx) in px.iter() {
                        for (y, wy) in py.iter() {
                            acc += wx * wy * kernel.eval([x, y]);
                        }
                    }
                    acc
                }
            };
            max_imag = max_imag.max(val.im.abs());
            uniform_bound = uniform_bound.max(val.re.abs());
            integrals.push(val.re);
        }
        rows.push(DeltaCheckRow { j, integrals });
    }
    Ok(DeltaCheckReport {
        regions: regions.to_vec(),
        rows,
        uniform_bound,
        max_imag,
    })
}
