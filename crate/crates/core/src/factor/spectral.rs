use crate::error::Result;
use crate::matrix::{gaussian, DenseMatrix, LinearOperator};
use crate::rng::SeededRng;

/// Power-iteration estimate of `‖B‖₂` through `BᵀB`.
///
/// The returned value is the largest Rayleigh estimate `‖Bx‖` seen over unit
/// iterates `x`, hence a lower bound on `σ₁(B)` up to rounding. Iteration stops
/// when consecutive estimates agree to relative `tol` or after `max_iters`.
pub fn spectral_norm_est<B: LinearOperator + ?Sized>(
    b: &B,
    tol: f64,
    max_iters: usize,
    rng: &mut SeededRng,
) -> Result<f64> {
    if b.nrows() == 0 || b.ncols() == 0 {
        return Ok(0.0);
    }
    let mut x = gaussian(b.ncols(), 1, rng)?;
    if !normalize(&mut x) {
        return Ok(0.0);
    }
    let mut best: f64 = 0.0;
    let mut previous = f64::NAN;
    for _ in 0..max_iters.max(1) {
        let y = b.apply(&x)?;
        let estimate = y.frobenius_norm();
        best = best.max(estimate);
        if (estimate - previous).abs() <= tol * estimate {
            break;
        }
        previous = estimate;
        x = b.apply_transpose(&y)?;
        if !normalize(&mut x) {
            break;
        }
    }
    Ok(best)
}

/// Maximum of [`spectral_norm_est`] over `restarts` independent Gaussian starts.
pub fn spectral_norm_restarts<B: LinearOperator + ?Sized>(
    b: &B,
    tol: f64,
    max_iters: usize,
    restarts: usize,
    rng: &mut SeededRng,
) -> Result<f64> {
    let mut best: f64 = 0.0;
    for _ in 0..restarts.max(1) {
        best = best.max(spectral_norm_est(b, tol, max_iters, rng)?);
    }
    Ok(best)
}

fn normalize(x: &mut DenseMatrix) -> bool {
    let len = x.frobenius_norm();
    if len == 0.0 || !len.is_finite() {
        return false;
    }
    let inv = 1.0 / len;
    for i in 0..x.rows() {
        x.row_mut(i).iter_mut().for_each(|v| *v *= inv);
    }
    true
}
