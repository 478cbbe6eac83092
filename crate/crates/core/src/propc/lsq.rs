//! Truncated-SVD least squares, real and complex.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

type C64 = Complex<f64>;

/// Solution of a real least-squares problem by truncated SVD.
#[derive(Debug, Clone)]
pub struct TsvdSolution {
    pub coefficients: DVector<f64>,
    /// Absolute residual `||A c - b||`.
    pub residual: f64,
    /// Number of singular values above the cutoff.
    pub rank: usize,
}

/// Minimum-norm least squares with singular values below
/// `rel_cutoff * sigma_max` discarded.
pub fn tsvd_solve_real(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    rel_cutoff: f64,
) -> Result<TsvdSolution> {
    let svd = a.clone().svd(true, true);
    let u = svd.u.as_ref().ok_or_else(|| Error::Infeasible("SVD did not return U".into()))?;
    let vt = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Infeasible("SVD did not return V^T".into()))?;
    let smax = svd.singular_values.max();
    let mut coeff = DVector::zeros(a.ncols());
    let mut rank = 0;
    let c = u.transpose() * b;
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > rel_cutoff * smax {
            rank += 1;
            coeff += vt.row(i).transpose() * (c[i] / s);
        }
    }
    let residual = (a * &coeff - b).norm();
    Ok(TsvdSolution { coefficients: coeff, residual, rank })
}

/// Thin complex SVD prepared for sweeping the retained rank.
///
/// For rank `r`, the minimum-norm solution is
/// `x_r = sum_{i < r} (u_i^H b / s_i) v_i`; its residual decreases with `r`
/// while its norm increases, which traces the accuracy/coefficient-size
/// trade-off curve.
pub struct ComplexSweep {
    singular_values: Vec<f64>,
    /// `u_i^H b` per singular triple.
    projections: Vec<C64>,
    /// right singular vectors as columns of `V` (conjugated transpose rows)
    v_t: DMatrix<C64>,
    b_norm: f64,
    n_cols: usize,
}

impl ComplexSweep {
    pub fn new(a: &DMatrix<C64>, b: &DVector<C64>) -> Result<Self> {
        let n_cols = a.ncols();
        let svd = a.clone().svd(true, true);
        let u = svd.u.as_ref().ok_or_else(|| Error::Infeasible("SVD did not return U".into()))?;
        let v_t = svd
            .v_t
            .clone()
            .ok_or_else(|| Error::Infeasible("SVD did not return V^H".into()))?;
        let c = u.adjoint() * b;
        Ok(ComplexSweep {
            singular_values: svd.singular_values.iter().copied().collect(),
            projections: c.iter().copied().collect(),
            v_t,
            b_norm: b.norm(),
            n_cols,
        })
    }

    pub fn max_rank(&self) -> usize {
        self.singular_values.len()
    }

    pub fn b_norm(&self) -> f64 {
        self.b_norm
    }

    /// Relative residual of the rank-`r` solution, from the orthogonal
    /// decomposition `||b||^2 - sum_{i<r} |u_i^H b|^2`.
    pub fn relative_residual(&self, rank: usize) -> f64 {
        let captured: f64 = self.projections[..rank].iter().map(|c| c.norm_sqr()).sum();
        ((self.b_norm * self.b_norm - captured).max(0.0)).sqrt() / self.b_norm
    }

    /// Euclidean norm of the rank-`r` coefficient vector.
    pub fn coefficient_norm(&self, rank: usize) -> f64 {
        self.projections[..rank]
            .iter()
            .zip(&self.singular_values)
            .map(|(c, s)| (c.norm() / s).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// The rank-`r` minimum-norm solution.
    pub fn solution(&self, rank: usize) -> DVector<C64> {
        let mut x = DVector::zeros(self.n_cols);
        for i in 0..rank {
            let scale = self.projections[i] / self.singular_values[i];
            x += self.v_t.row(i).adjoint() * scale;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tsvd_solves_full_rank_system() {
        let a = DMatrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, -1.0]);
        let b = DVector::from_column_slice(&[1.0, 2.0, 3.0, -1.0]);
        let sol = tsvd_solve_real(&a, &b, 1e-12).unwrap();
        assert_eq!(sol.rank, 2);
        // normal-equations solution: x = (A^T A)^{-1} A^T b
        let ata = a.transpose() * &a;
        let x = ata.try_inverse().unwrap() * a.transpose() * &b;
        assert_relative_eq!(sol.coefficients[0], x[0], epsilon = 1e-12);
        assert_relative_eq!(sol.coefficients[1], x[1], epsilon = 1e-12);
    }

    #[test]
    fn tsvd_handles_rank_deficiency() {
        // duplicated column: rank 1, minimum-norm splits the coefficient
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 2.0, 2.0, 3.0, 3.0]);
        let b = DVector::from_column_slice(&[2.0, 4.0, 6.0]);
        let sol = tsvd_solve_real(&a, &b, 1e-10).unwrap();
        assert_eq!(sol.rank, 1);
        assert!(sol.residual < 1e-12);
        assert_relative_eq!(sol.coefficients[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(sol.coefficients[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn complex_sweep_residual_matches_direct_evaluation() {
        let n = 20;
        let m = 6;
        let a = DMatrix::<C64>::from_fn(n, m, |i, j| {
            C64::new(
                ((i * j) as f64 * 0.1).cos(),
                ((i + j) as f64 * 0.2).sin() * 0.3,
            )
        });
        let b = DVector::<C64>::from_fn(n, |i, _| C64::new(1.0 / (i as f64 + 1.0), 0.2));
        let sweep = ComplexSweep::new(&a, &b).unwrap();
        for rank in [1, 3, m] {
            let x = sweep.solution(rank);
            let direct = (&a * &x - &b).norm() / b.norm();
            assert_relative_eq!(sweep.relative_residual(rank), direct, epsilon = 1e-10);
            assert_relative_eq!(sweep.coefficient_norm(rank), x.norm(), epsilon = 1e-12);
        }
        // residual decreases, norm increases along the sweep
        for r in 1..m {
            assert!(sweep.relative_residual(r + 1) <= sweep.relative_residual(r) + 1e-14);
            assert!(sweep.coefficient_norm(r + 1) >= sweep.coefficient_norm(r) - 1e-14);
        }
    }
}
