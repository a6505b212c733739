//! Randomized partial SVD with gap-independent guarantees.
//!
//! Three algorithms share one Rayleigh–Ritz finish:
//!
//! * [`rsvd::simultaneous_iteration`]: power the random block through `(AAᵀ)^q`.
//! * [`rsvd::block_krylov`]: keep every power, `[AΠ, (AAᵀ)AΠ, …, (AAᵀ)^q AΠ]`,
//!   reaching the same accuracy in roughly the square root as many iterations.
//! * [`rsvd::sketch_and_solve`]: one product, no iterations; the baseline.
//!
//! [`metrics`] scores a result by Frobenius, spectral and per-vector error
//! against the exact [`factor::dense_svd_reference`]. [`chebyshev`] holds the
//! polynomial that explains the Krylov speedup.
//!
//! The crate is `no_std` and needs only `alloc`. All arithmetic is `f64` and
//! every kernel is sequential with a fixed summation order, so identical
//! inputs and seeds give bitwise-identical outputs.

#![no_std]

extern crate alloc;

pub mod chebyshev;
mod error;
pub mod factor;
pub mod matrix;
pub mod metrics;
pub mod rng;
pub mod rsvd;

pub use error::{Error, Result};
pub use matrix::{DenseMatrix, LinearOperator, MatrixOperator, SparseMatrixCSR};
pub use rng::SeededRng;
pub use rsvd::{factorize, PartialSvdResult, QMode, RsvdConfig, Variant};
