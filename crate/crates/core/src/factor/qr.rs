use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::rng::SeededRng;

/// Residual norm below this fraction of the input column norm marks the
/// column as numerically dependent.
pub const DEPENDENCE_THRESHOLD: f64 = 1e-12;

/// Output of [`orthonormalize_columns`].
#[derive(Debug, Clone)]
pub struct Orthonormalized {
    pub q: DenseMatrix,
    /// Input columns that were dependent and got replaced by random directions.
    pub replaced: Vec<usize>,
}

/// Orthonormal basis for `span(M)` with exactly `M.cols` columns.
///
/// Gram–Schmidt with one full re-orthogonalization pass ("twice is enough").
/// Dependent columns are replaced by Gaussian vectors drawn from `rng` and
/// orthogonalized against all earlier columns, so the width never shrinks.
pub fn qr_orthonormalize(m: &DenseMatrix, rng: &mut SeededRng) -> Result<DenseMatrix> {
    orthonormalize_columns(m, rng).map(|o| o.q)
}

/// Same as [`qr_orthonormalize`], also reporting which columns were replaced.
pub fn orthonormalize_columns(m: &DenseMatrix, rng: &mut SeededRng) -> Result<Orthonormalized> {
    let (n, w) = m.shape();
    if n < w {
        return Err(Error::invalid(alloc::format!(
            "orthonormalization needs rows >= cols, got {n}x{w}"
        )));
    }
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(w);
    let mut replaced = Vec::new();
    for j in 0..w {
        let mut v = m.column(j);
        let original = norm(&v);
        project_out(&mut v, &basis);
        project_out(&mut v, &basis);
        let mut residual = norm(&v);
        if original == 0.0 || residual <= DEPENDENCE_THRESHOLD * original {
            replaced.push(j);
            loop {
                v = (0..n).map(|_| rng.next_gaussian()).collect();
                let start = norm(&v);
                project_out(&mut v, &basis);
                project_out(&mut v, &basis);
                residual = norm(&v);
                if residual > DEPENDENCE_THRESHOLD * start {
                    break;
                }
            }
        }
        let inv = 1.0 / residual;
        v.iter_mut().for_each(|x| *x *= inv);
        basis.push(v);
    }
    Ok(Orthonormalized {
        q: DenseMatrix::from_columns(n, &basis),
        replaced,
    })
}

fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(v, b);
        for (x, &y) in v.iter_mut().zip(b) {
            *x -= c * y;
        }
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::gaussian;

    #[test]
    fn identity_is_fixed_point() {
        let q = qr_orthonormalize(&DenseMatrix::identity(3), &mut SeededRng::new(1)).unwrap();
        assert_eq!(q, DenseMatrix::identity(3));
    }

    #[test]
    fn dependent_column_is_replaced() {
        let m = DenseMatrix::from_rows(&[[3.0, 0.0], [4.0, 0.0]]).unwrap();
        let out = orthonormalize_columns(&m, &mut SeededRng::new(5)).unwrap();
        assert_eq!(out.replaced, [1]);
        let q = out.q;
        assert!((q[(0, 0)] - 0.6).abs() < 1e-15 && (q[(1, 0)] - 0.8).abs() < 1e-15);
        let c1 = q.column(1);
        assert!((norm(&c1) - 1.0).abs() < 1e-14);
        assert!(dot(&c1, &q.column(0)).abs() < 1e-14);
    }

    #[test]
    fn random_block_contract() {
        let mut rng = SeededRng::new(17);
        let m = gaussian(50, 8, &mut rng).unwrap();
        let q = qr_orthonormalize(&m, &mut rng).unwrap();
        assert!(q.orthonormality_defect() < 1e-12);
        // Q Qᵀ M reproduces M.
        let proj = q.matmul(&q.transpose_matmul(&m).unwrap()).unwrap();
        assert!(proj.sub(&m).unwrap().frobenius_norm() < 1e-10 * m.frobenius_norm());
    }

    #[test]
    fn rejects_wide_input() {
        assert!(qr_orthonormalize(&DenseMatrix::zeros(2, 3), &mut SeededRng::new(1)).is_err());
    }

    #[test]
    fn zero_matrix_still_full_width() {
        let out = orthonormalize_columns(&DenseMatrix::zeros(6, 4), &mut SeededRng::new(2)).unwrap();
        assert_eq!(out.replaced.len(), 4);
        assert!(out.q.orthonormality_defect() < 1e-14);
    }
}
