//! Dense and CSR storage, block products, and seeded Gaussian sampling.
//!
//! Every product accumulates each output entry over the inner index in a
//! fixed increasing order, so results are bitwise reproducible.

mod dense;
mod operator;
mod sparse;

pub use dense::{gaussian, DenseMatrix};
pub use operator::{LinearOperator, MatrixOperator};
pub use sparse::SparseMatrixCSR;

/// `A · B`.
pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> crate::Result<DenseMatrix> {
    a.matmul(b)
}

/// `A · B`, or `Aᵀ · B` when `transpose_a` is set.
pub fn spmm(a: &SparseMatrixCSR, b: &DenseMatrix, transpose_a: bool) -> crate::Result<DenseMatrix> {
    a.spmm(b, transpose_a)
}

/// `‖A‖²_F`.
pub fn frobenius_norm_sq(a: &MatrixOperator) -> f64 {
    a.frobenius_norm_sq()
}
