//! Orthonormalization, symmetric eigendecomposition, the dense reference SVD,
//! and spectral-norm estimation.

mod eig;
mod qr;
mod spectral;
mod svd;

pub use eig::{symmetric_eig, symmetric_eig_with, EigResult, JacobiOptions};
pub use qr::{orthonormalize_columns, qr_orthonormalize, Orthonormalized, DEPENDENCE_THRESHOLD};
pub use spectral::{spectral_norm_est, spectral_norm_restarts};
pub use svd::{dense_svd_reference, dense_svd_reference_with, SvdResult, ORACLE_MAX_SIDE};
