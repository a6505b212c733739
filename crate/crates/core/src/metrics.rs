//! Frobenius, spectral and per-vector error of an approximate singular
//! subspace against a reference spectrum.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factor::{dense_svd_reference, spectral_norm_restarts, SvdResult};
use crate::matrix::{DenseMatrix, LinearOperator, MatrixOperator};
use crate::rng::SeededRng;
use crate::rsvd::{PartialSvdResult, Variant};

/// Largest `‖ZᵀZ − I‖_max` accepted as “orthonormal”.
pub const ORTHONORMALITY_TOL: f64 = 1e-8;

/// Reference singular values for the error measures.
pub trait SpectrumOracle {
    /// `σ_{i+1}` (zero-based), zero past the known spectrum.
    fn sigma(&self, i: usize) -> f64;
    /// `Σ_{i>k} σᵢ² = ‖A − A_k‖²_F`.
    fn tail_energy(&self, k: usize) -> f64;
}

impl SpectrumOracle for SvdResult {
    fn sigma(&self, i: usize) -> f64 {
        SvdResult::sigma(self, i)
    }

    fn tail_energy(&self, k: usize) -> f64 {
        self.singular_values.iter().skip(k).map(|s| s * s).sum()
    }
}

/// A full descending spectrum held as plain values.
impl SpectrumOracle for [f64] {
    fn sigma(&self, i: usize) -> f64 {
        self.get(i).copied().unwrap_or(0.0)
    }

    fn tail_energy(&self, k: usize) -> f64 {
        self.iter().skip(k).map(|s| s * s).sum()
    }
}

impl SpectrumOracle for Vec<f64> {
    fn sigma(&self, i: usize) -> f64 {
        self.as_slice().sigma(i)
    }

    fn tail_energy(&self, k: usize) -> f64 {
        self.as_slice().tail_energy(k)
    }
}

/// Leading singular values plus `‖A‖²_F`, for matrices too large for the
/// dense reference. Tail energy is `‖A‖²_F − Σ_{i≤k} σᵢ²`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSpectrum {
    pub leading: Vec<f64>,
    pub frobenius_norm_sq: f64,
}

impl SpectrumOracle for PartialSpectrum {
    fn sigma(&self, i: usize) -> f64 {
        self.leading.get(i).copied().unwrap_or(0.0)
    }

    fn tail_energy(&self, k: usize) -> f64 {
        let head: f64 = self.leading.iter().take(k).map(|s| s * s).sum();
        (self.frobenius_norm_sq - head).max(0.0)
    }
}

/// A ratio against the optimum, flagged when the optimum is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio {
    pub value: f64,
    /// `A` has rank ≤ k, so the optimal error is zero and the ratio is reported as 1.
    pub exact_rank: bool,
}

fn check_orthonormal(z: &DenseMatrix) -> Result<()> {
    let defect = z.orthonormality_defect();
    if defect > ORTHONORMALITY_TOL {
        return Err(Error::invalid(alloc::format!(
            "Z columns are not orthonormal (max |ZᵀZ − I| = {defect:e})"
        )));
    }
    Ok(())
}

fn check_rows<A: LinearOperator + ?Sized>(a: &A, z: &DenseMatrix) -> Result<()> {
    if z.rows() != a.nrows() {
        return Err(Error::DimensionMismatch {
            op: "metrics",
            left: (a.nrows(), a.ncols()),
            right: z.shape(),
        });
    }
    Ok(())
}

/// `‖A − ZZᵀA‖_F / ‖A − A_k‖_F` with `k = Z.cols`.
///
/// The numerator uses `‖A − ZZᵀA‖²_F = ‖A‖²_F − ‖ZᵀA‖²_F`, valid for orthonormal `Z`.
pub fn frob_error_ratio<O: SpectrumOracle + ?Sized>(
    a: &MatrixOperator,
    z: &DenseMatrix,
    oracle: &O,
) -> Result<Ratio> {
    check_rows(a, z)?;
    check_orthonormal(z)?;
    let total = a.frobenius_norm_sq();
    let captured = a.apply_transpose(z)?.frobenius_norm_sq();
    let residual = (total - captured).max(0.0);
    let optimal = oracle.tail_energy(z.cols());
    if libm::sqrt(optimal) < 1e-14 * libm::sqrt(total) {
        return Ok(Ratio {
            value: 1.0,
            exact_rank: true,
        });
    }
    Ok(Ratio {
        value: libm::sqrt(residual / optimal),
        exact_rank: false,
    })
}

/// `x ↦ (A − ZZᵀA)x` as an implicit operator.
#[derive(Debug, Clone, Copy)]
pub struct ProjectionResidual<'a, A: ?Sized> {
    a: &'a A,
    z: &'a DenseMatrix,
}

impl<'a, A: LinearOperator + ?Sized> ProjectionResidual<'a, A> {
    pub fn new(a: &'a A, z: &'a DenseMatrix) -> Self {
        ProjectionResidual { a, z }
    }
}

fn remove_projection(z: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
    let coeffs = z.transpose_matmul(y)?;
    y.sub(&z.matmul(&coeffs)?)
}

impl<A: LinearOperator + ?Sized> LinearOperator for ProjectionResidual<'_, A> {
    fn nrows(&self) -> usize {
        self.a.nrows()
    }

    fn ncols(&self) -> usize {
        self.a.ncols()
    }

    fn apply(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        remove_projection(self.z, &self.a.apply(x)?)
    }

    fn apply_transpose(&self, y: &DenseMatrix) -> Result<DenseMatrix> {
        self.a.apply_transpose(&remove_projection(self.z, y)?)
    }
}

/// Power-iteration settings used for spectral error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions {
    pub tol: f64,
    pub max_iters: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tol: 1e-9,
            max_iters: 20_000,
            restarts: 3,
            seed: 0x005E_ED0F_5EC7,
        }
    }
}

/// `‖A − ZZᵀA‖₂ / σ_{k+1}`, numerator by restarted power iteration.
pub fn spectral_error_ratio<O: SpectrumOracle + ?Sized>(
    a: &MatrixOperator,
    z: &DenseMatrix,
    oracle: &O,
) -> Result<Ratio> {
    spectral_error_ratio_with(a, z, oracle, SpectralOptions::default())
}

pub fn spectral_error_ratio_with<O: SpectrumOracle + ?Sized>(
    a: &MatrixOperator,
    z: &DenseMatrix,
    oracle: &O,
    opts: SpectralOptions,
) -> Result<Ratio> {
    check_rows(a, z)?;
    check_orthonormal(z)?;
    let optimal = oracle.sigma(z.cols());
    if optimal <= 1e-14 * oracle.sigma(0) {
        return Ok(Ratio {
            value: 1.0,
            exact_rank: true,
        });
    }
    let residual = ProjectionResidual::new(a, z);
    let mut rng = SeededRng::new(opts.seed);
    let norm = spectral_norm_restarts(&residual, opts.tol, opts.max_iters, opts.restarts, &mut rng)?;
    Ok(Ratio {
        value: norm / optimal,
        exact_rank: false,
    })
}

/// Per-vector deviations `|σᵢ² − ‖Aᵀzᵢ‖²|`, scaled by `σ²_{k+1}` when that is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct PerVectorErrors {
    pub errors: Vec<f64>,
    /// `false` when `σ_{k+1} = 0` and the errors are absolute.
    pub relative: bool,
}

impl PerVectorErrors {
    pub fn max(&self) -> f64 {
        self.errors.iter().fold(0.0, |m, &e| m.max(e))
    }
}

pub fn per_vector_errors<O: SpectrumOracle + ?Sized>(
    a: &MatrixOperator,
    z: &DenseMatrix,
    oracle: &O,
) -> Result<PerVectorErrors> {
    check_rows(a, z)?;
    check_orthonormal(z)?;
    let k = z.cols();
    let w = a.apply_transpose(z)?;
    let mut captured = alloc::vec![0.0; k];
    for r in 0..w.rows() {
        for (c, &x) in captured.iter_mut().zip(w.row(r)) {
            *c += x * x;
        }
    }
    let tail = oracle.sigma(k);
    let relative = tail > 1e-14 * oracle.sigma(0);
    let scale = if relative { tail * tail } else { 1.0 };
    let errors = captured
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let s = oracle.sigma(i);
            (s * s - c).abs() / scale
        })
        .collect();
    Ok(PerVectorErrors { errors, relative })
}

/// `ℰ(Z_l, A) = ‖A_l‖²_F − ‖Z_l Z_lᵀ A‖²_F` for the first `l` columns of `Z`.
pub fn error_function<O: SpectrumOracle + ?Sized>(
    a: &MatrixOperator,
    z: &DenseMatrix,
    l: usize,
    oracle: &O,
) -> Result<f64> {
    if l > z.cols() {
        return Err(Error::invalid(alloc::format!(
            "l = {l} exceeds the {} columns of Z",
            z.cols()
        )));
    }
    check_rows(a, z)?;
    let zl = z.leading_columns(l);
    let captured = a.apply_transpose(&zl)?.frobenius_norm_sq();
    let best: f64 = (0..l).map(|i| oracle.sigma(i) * oracle.sigma(i)).sum();
    Ok(best - captured)
}

/// Outcome of [`additive_spectral_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdditiveSpectralCheck {
    pub passed: bool,
    /// `‖A − B‖²_F − ‖A − A_k‖²_F`.
    pub eta: f64,
    pub spectral_sq: f64,
    /// `σ²_{k+1} + η + 1e-8 σ₁²`.
    pub bound: f64,
}

/// Checks `‖A − B‖²₂ ≤ ‖A − A_k‖²₂ + η` for a rank-≤k candidate `B`, with a
/// `1e-8 σ₁²` rounding allowance. Both norms of `A − B` are computed exactly
/// with the dense reference.
///
/// The rank test is `σ²_{k+1}(B) < 1e-10 σ²₁(B)` on Gram eigenvalues: the
/// Gram-route reference only resolves singular values above about √ε σ₁.
pub fn additive_spectral_check<O: SpectrumOracle + ?Sized>(
    a: &MatrixOperator,
    b: &DenseMatrix,
    k: usize,
    oracle: &O,
) -> Result<AdditiveSpectralCheck> {
    if b.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            op: "additive_spectral_check",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let b_svd = dense_svd_reference(&MatrixOperator::Dense(b.clone()))?;
    let (top, extra) = (b_svd.sigma(0), b_svd.sigma(k));
    if extra * extra >= 1e-10 * top * top && extra > 0.0 {
        return Err(Error::invalid(alloc::format!(
            "candidate has rank above k = {k} (σ_{{k+1}}/σ₁ = {:e})",
            extra / top
        )));
    }
    let diff = a.to_dense().sub(b)?;
    let eta = diff.frobenius_norm_sq() - oracle.tail_energy(k);
    let spectral = dense_svd_reference(&MatrixOperator::Dense(diff))?.sigma(0);
    let spectral_sq = spectral * spectral;
    let s1 = oracle.sigma(0);
    let tail = oracle.sigma(k);
    let bound = tail * tail + eta + 1e-8 * s1 * s1;
    Ok(AdditiveSpectralCheck {
        passed: spectral_sq <= bound,
        eta,
        spectral_sq,
        bound,
    })
}

/// All three error measures for one factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub frob_ratio: f64,
    pub spectral_ratio: f64,
    pub per_vector_errors: Vec<f64>,
    pub per_vector_max: f64,
    /// Per-vector errors are relative to `σ²_{k+1}`.
    pub per_vector_relative: bool,
    pub exact_rank: bool,
    pub k: usize,
    pub q: u32,
    pub variant: Variant,
    pub seed: u64,
}

/// Evaluates a factorization result against the oracle.
pub fn evaluate<O: SpectrumOracle + ?Sized>(
    a: &MatrixOperator,
    result: &PartialSvdResult,
    oracle: &O,
) -> Result<ErrorReport> {
    let frob = frob_error_ratio(a, &result.z, oracle)?;
    let spectral = spectral_error_ratio(a, &result.z, oracle)?;
    let per_vector = per_vector_errors(a, &result.z, oracle)?;
    Ok(ErrorReport {
        frob_ratio: frob.value,
        spectral_ratio: spectral.value,
        per_vector_max: per_vector.max(),
        per_vector_relative: per_vector.relative,
        per_vector_errors: per_vector.errors,
        exact_rank: frob.exact_rank || spectral.exact_rank,
        k: result.z.cols(),
        q: result.q_used,
        variant: result.variant,
        seed: result.seed,
    })
}
