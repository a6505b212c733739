use alloc::vec::Vec;

use super::eig::{symmetric_eig_with, JacobiOptions};
use super::qr::{dot, norm};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, MatrixOperator};

/// Largest `min(n, d)` the dense reference accepts.
pub const ORACLE_MAX_SIDE: usize = 2000;

/// Directions with `σᵢ < RELATIVE_CUTOFF · σ₁` are dropped.
const RELATIVE_CUTOFF: f64 = 1e-12;

/// Gram eigenvalues below `GRAM_NOISE · m · ε · λ₁` are indistinguishable from
/// rounding in an `m × m` Gram matrix and are treated as zero.
const GRAM_NOISE: f64 = 16.0;

/// Thin SVD `A = U diag(σ) Vᵀ` with `r` retained directions.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `n × r`, orthonormal columns.
    pub u: DenseMatrix,
    /// Descending, nonnegative, length `r`.
    pub singular_values: Vec<f64>,
    /// `d × r`, orthonormal columns.
    pub v: DenseMatrix,
}

impl SvdResult {
    /// `σᵢ` (zero-based), zero past the retained rank.
    pub fn sigma(&self, i: usize) -> f64 {
        self.singular_values.get(i).copied().unwrap_or(0.0)
    }

    pub fn rank(&self) -> usize {
        self.singular_values.len()
    }

    /// `U diag(σ) Vᵀ`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let mut us = self.u.clone();
        us.scale_columns(&self.singular_values);
        us.matmul(&self.v.transpose()).expect("shapes agree by construction")
    }
}

/// Exact reference SVD through the Gram matrix of the smaller side.
///
/// Accuracy is limited by the squared condition number: singular values are
/// good to about `ε σ₁² / σᵢ` in absolute terms.
pub fn dense_svd_reference(a: &MatrixOperator) -> Result<SvdResult> {
    dense_svd_reference_with(a, JacobiOptions::default())
}

pub fn dense_svd_reference_with(a: &MatrixOperator, opts: JacobiOptions) -> Result<SvdResult> {
    let (n, d) = a.shape();
    let min_side = n.min(d);
    if min_side > ORACLE_MAX_SIDE {
        return Err(Error::OracleTooLarge {
            min_side,
            limit: ORACLE_MAX_SIDE,
        });
    }
    let dense = a.to_dense();
    // Work with the tall orientation so the Gram matrix is min_side × min_side.
    let tall = if d <= n { dense } else { dense.transpose() };
    let gram = tall.gram();
    let eig = symmetric_eig_with(&gram, opts)?;

    let lambda_max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let sigma_max = libm::sqrt(lambda_max);
    let noise_floor = GRAM_NOISE * min_side as f64 * f64::EPSILON * lambda_max;

    let mut right: Vec<Vec<f64>> = Vec::new();
    let mut left: Vec<Vec<f64>> = Vec::new();
    let mut sigmas = Vec::new();
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let sigma = libm::sqrt(lambda.max(0.0));
        if sigma_max == 0.0 || sigma < RELATIVE_CUTOFF * sigma_max || lambda <= noise_floor {
            break;
        }
        let vi = eig.eigenvectors.column(i);
        let mut ui = matvec(&tall, &vi);
        ui.iter_mut().for_each(|x| *x /= sigma);
        // Clean up rounding drift against the earlier left vectors.
        for _ in 0..2 {
            for prev in &left {
                let c = dot(&ui, prev);
                ui.iter_mut().zip(prev).for_each(|(x, p)| *x -= c * p);
            }
        }
        let len = norm(&ui);
        ui.iter_mut().for_each(|x| *x /= len);
        left.push(ui);
        right.push(vi);
        sigmas.push(sigma);
    }
    let rows_tall = tall.rows();
    let u_tall = DenseMatrix::from_columns(rows_tall, &left);
    let v_tall = DenseMatrix::from_columns(min_side, &right);
    let (u, v) = if d <= n {
        (u_tall, v_tall)
    } else {
        (v_tall, u_tall)
    };
    Ok(SvdResult {
        u,
        singular_values: sigmas,
        v,
    })
}

fn matvec(m: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    (0..m.rows()).map(|i| dot(m.row(i), x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::gaussian;
    use crate::rng::SeededRng;

    #[test]
    fn diagonal_values() {
        let a = MatrixOperator::Dense(DenseMatrix::diag(&[3.0, 2.0, 1.0]));
        let s = dense_svd_reference(&a).unwrap();
        assert_eq!(s.rank(), 3);
        for (got, want) in s.singular_values.iter().zip([3.0, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        for i in 0..3 {
            assert!((s.u[(i, i)].abs() - 1.0).abs() < 1e-14);
            assert!((s.v[(i, i)].abs() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rank_one() {
        // ‖u‖ = 2, ‖v‖ = 3.
        let u = [2.0 / 3.0 * 1.0, 2.0 / 3.0 * 2.0, 2.0 / 3.0 * 2.0];
        let v = [0.0, 3.0 * 0.6, 3.0 * 0.8, 0.0];
        let a = DenseMatrix::from_fn(3, 4, |i, j| u[i] * v[j]);
        let s = dense_svd_reference(&a.into()).unwrap();
        assert_eq!(s.rank(), 1);
        assert!((s.singular_values[0] - 6.0).abs() < 1e-13);
    }

    #[test]
    fn wide_input_uses_row_gram() {
        let mut rng = SeededRng::new(4);
        let a = gaussian(12, 30, &mut rng).unwrap();
        let s = dense_svd_reference(&a.clone().into()).unwrap();
        assert_eq!(s.u.shape(), (12, 12));
        assert_eq!(s.v.shape(), (30, 12));
        let err = s.reconstruct().sub(&a).unwrap().frobenius_norm();
        assert!(err < 1e-8 * a.frobenius_norm());
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = SeededRng::new(40);
        let a = gaussian(40, 25, &mut rng).unwrap();
        let s = dense_svd_reference(&a.clone().into()).unwrap();
        assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        assert!(s.u.orthonormality_defect() < 1e-10);
        assert!(s.v.orthonormality_defect() < 1e-10);
        let err = s.reconstruct().sub(&a).unwrap().frobenius_norm();
        assert!(err < 1e-8 * a.frobenius_norm());
    }

    #[test]
    fn guard_refuses_large_input() {
        let a = MatrixOperator::Sparse(crate::matrix::SparseMatrixCSR::identity(2001));
        assert!(matches!(
            dense_svd_reference(&a),
            Err(Error::OracleTooLarge { min_side: 2001, .. })
        ));
    }

    #[test]
    fn zero_matrix_has_empty_spectrum() {
        let s = dense_svd_reference(&DenseMatrix::zeros(4, 3).into()).unwrap();
        assert_eq!(s.rank(), 0);
        assert_eq!(s.sigma(0), 0.0);
    }
}
