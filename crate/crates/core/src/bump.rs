//! The standard compactly supported smooth profile `exp(-1/(1-t^2))` and its
//! derivatives.
//!
//! Derivatives follow the closed form `b^(m)(t) = b(t) * S_m(t) / (1-t^2)^(2m)`
//! where the `S_m` are polynomials obeying
//! `S_{m+1} = S_m' (1-t^2)^2 + S_m (4 m t (1-t^2) - 2 t)`.

/// `exp(-1/(1-t^2))` for `|t| < 1`, zero outside.
pub fn profile(t: f64) -> f64 {
    if t.abs() < 1.0 {
        (-1.0 / (1.0 - t * t)).exp()
    } else {
        0.0
    }
}

/// Precomputed `S_m` polynomials for derivatives of [`profile`] up to a
/// given order. Coefficients are stored low degree first.
#[derive(Debug, Clone)]
pub struct ProfileDerivatives {
    polys: Vec<Vec<f64>>,
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_add_into(acc: &mut Vec<f64>, b: &[f64]) {
    if acc.len() < b.len() {
        acc.resize(b.len(), 0.0);
    }
    for (a, &x) in acc.iter_mut().zip(b) {
        *a += x;
    }
}

fn poly_deriv(a: &[f64]) -> Vec<f64> {
    if a.len() <= 1 {
        return vec![0.0];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| i as f64 * c)
        .collect()
}

impl ProfileDerivatives {
    pub fn new(max_order: usize) -> Self {
        let one_minus_t2_sq = [1.0, 0.0, -2.0, 0.0, 1.0]; // (1-t^2)^2
        let mut polys = vec![vec![1.0]];
        for m in 0..max_order {
            let s = &polys[m];
            let mut next = poly_mul(&poly_deriv(s), &one_minus_t2_sq);
            // 4 m t (1-t^2) - 2t = (4m-2) t - 4m t^3
            let q = [0.0, 4.0 * m as f64 - 2.0, 0.0, -4.0 * m as f64];
            poly_add_into(&mut next, &poly_mul(s, &q));
            polys.push(next);
        }
        ProfileDerivatives { polys }
    }

    pub fn max_order(&self) -> usize {
        self.polys.len() - 1
    }

    /// `m`-th derivative of [`profile`] at `t`.
    pub fn eval(&self, m: usize, t: f64) -> f64 {
        assert!(m <= self.max_order());
        if t.abs() >= 1.0 {
            return 0.0;
        }
        let poly = &self.polys[m];
        let mut val = 0.0;
        for &c in poly.iter().rev() {
            val = val * t + c;
        }
        let u = 1.0 - t * t;
        profile(t) * val / u.powi(2 * m as i32)
    }
}
