use super::{DenseMatrix, SparseMatrixCSR};
use crate::error::Result;

/// Anything that can multiply a dense block from the left, in both orientations.
pub trait LinearOperator {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// `A · x` for an `ncols × m` block `x`.
    fn apply(&self, x: &DenseMatrix) -> Result<DenseMatrix>;
    /// `Aᵀ · y` for an `nrows × m` block `y`.
    fn apply_transpose(&self, y: &DenseMatrix) -> Result<DenseMatrix>;
}

/// The input matrix of a factorization, dense or sparse.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixOperator {
    Dense(DenseMatrix),
    Sparse(SparseMatrixCSR),
}

impl MatrixOperator {
    pub fn shape(&self) -> (usize, usize) {
        (self.nrows(), self.ncols())
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            MatrixOperator::Dense(m) => m.clone(),
            MatrixOperator::Sparse(s) => s.to_dense(),
        }
    }

    /// Sum of squared entries.
    pub fn frobenius_norm_sq(&self) -> f64 {
        match self {
            MatrixOperator::Dense(m) => m.frobenius_norm_sq(),
            MatrixOperator::Sparse(s) => s.frobenius_norm_sq(),
        }
    }

    /// Structural nonzeros (all entries for dense storage).
    pub fn nnz(&self) -> usize {
        match self {
            MatrixOperator::Dense(m) => m.rows() * m.cols(),
            MatrixOperator::Sparse(s) => s.nnz(),
        }
    }
}

impl From<DenseMatrix> for MatrixOperator {
    fn from(m: DenseMatrix) -> Self {
        MatrixOperator::Dense(m)
    }
}

impl From<SparseMatrixCSR> for MatrixOperator {
    fn from(s: SparseMatrixCSR) -> Self {
        MatrixOperator::Sparse(s)
    }
}

impl LinearOperator for MatrixOperator {
    fn nrows(&self) -> usize {
        match self {
            MatrixOperator::Dense(m) => m.rows(),
            MatrixOperator::Sparse(s) => s.rows(),
        }
    }

    fn ncols(&self) -> usize {
        match self {
            MatrixOperator::Dense(m) => m.cols(),
            MatrixOperator::Sparse(s) => s.cols(),
        }
    }

    fn apply(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        match self {
            MatrixOperator::Dense(m) => m.matmul(x),
            MatrixOperator::Sparse(s) => s.spmm(x, false),
        }
    }

    fn apply_transpose(&self, y: &DenseMatrix) -> Result<DenseMatrix> {
        match self {
            MatrixOperator::Dense(m) => m.transpose_matmul(y),
            MatrixOperator::Sparse(s) => s.spmm(y, true),
        }
    }
}

impl LinearOperator for DenseMatrix {
    fn nrows(&self) -> usize {
        self.rows()
    }

    fn ncols(&self) -> usize {
        self.cols()
    }

    fn apply(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        self.matmul(x)
    }

    fn apply_transpose(&self, y: &DenseMatrix) -> Result<DenseMatrix> {
        self.transpose_matmul(y)
    }
}

impl<T: LinearOperator + ?Sized> LinearOperator for &T {
    fn nrows(&self) -> usize {
        (**self).nrows()
    }

    fn ncols(&self) -> usize {
        (**self).ncols()
    }

    fn apply(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        (**self).apply(x)
    }

    fn apply_transpose(&self, y: &DenseMatrix) -> Result<DenseMatrix> {
        (**self).apply_transpose(y)
    }
}
