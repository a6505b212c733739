//! Simultaneous iteration, block Krylov iteration and the sketch-and-solve
//! baseline, sharing one Rayleigh–Ritz post-processing step.

mod config;

use alloc::vec::Vec;

pub use config::{
    derive_q, derive_q_gap, KrylovOverflow, QMode, RsvdConfig, Variant, DEFAULT_Q_CONSTANT,
};

use crate::error::{Error, Result};
use crate::factor::{orthonormalize_columns, qr_orthonormalize, symmetric_eig};
use crate::matrix::{gaussian, DenseMatrix, LinearOperator};
use crate::rng::SeededRng;

/// Approximate top-`k` left singular subspace.
#[derive(Debug, Clone)]
pub struct PartialSvdResult {
    /// `n × k`, orthonormal columns, signs canonicalized.
    pub z: DenseMatrix,
    /// `√λᵢ` of the projected Gram matrix, descending.
    pub singular_values: Vec<f64>,
    /// Iterations actually run (after odd rounding and any Krylov clamp).
    pub q_used: u32,
    /// Width of the basis the Rayleigh–Ritz step worked in.
    pub basis_width: usize,
    /// Input columns the final orthonormalization had to replace.
    pub replaced_columns: usize,
    /// Filled in by callers that time the run; the core has no clock.
    pub wall_time_ms: f64,
    pub variant: Variant,
    pub seed: u64,
}

/// Runs whichever variant `cfg` names.
pub fn factorize<A: LinearOperator + ?Sized>(a: &A, cfg: &RsvdConfig) -> Result<PartialSvdResult> {
    match cfg.variant {
        Variant::SimultaneousIteration => simultaneous_iteration(a, cfg),
        Variant::BlockKrylov => block_krylov(a, cfg),
        Variant::SketchAndSolve => sketch_and_solve(a, cfg),
    }
}

fn require_variant(cfg: &RsvdConfig, want: Variant) -> Result<()> {
    if cfg.variant != want {
        return Err(Error::invalid(alloc::format!(
            "config names {} but {} was called",
            cfg.variant,
            want
        )));
    }
    Ok(())
}

/// `K = (AAᵀ)^q AΠ`, re-orthonormalized every `reorthonormalize_every`
/// products, followed by Rayleigh–Ritz on its span.
pub fn simultaneous_iteration<A: LinearOperator + ?Sized>(
    a: &A,
    cfg: &RsvdConfig,
) -> Result<PartialSvdResult> {
    require_variant(cfg, Variant::SimultaneousIteration)?;
    let (n, d) = (a.nrows(), a.ncols());
    cfg.validate(n, d)?;
    let q = cfg.resolve_q(d)?;
    let mut rng = SeededRng::new(cfg.seed);
    let pi = gaussian(d, cfg.block_width(), &mut rng)?;
    let mut block = a.apply(&pi)?;
    for i in 1..=q as usize {
        block = a.apply(&a.apply_transpose(&block)?)?;
        if i % cfg.reorthonormalize_every == 0 {
            block = qr_orthonormalize(&block, &mut rng)?;
        }
    }
    let basis = orthonormalize_columns(&block, &mut rng)?;
    finish(a, cfg, basis.q, basis.replaced.len(), q)
}

/// `K = [AΠ, (AAᵀ)AΠ, …, (AAᵀ)^q AΠ]` with each block orthonormalized as it
/// is produced, then one orthonormalization of all of `K` and Rayleigh–Ritz.
pub fn block_krylov<A: LinearOperator + ?Sized>(
    a: &A,
    cfg: &RsvdConfig,
) -> Result<PartialSvdResult> {
    require_variant(cfg, Variant::BlockKrylov)?;
    let (n, d) = (a.nrows(), a.ncols());
    cfg.validate(n, d)?;
    let p = cfg.block_width();
    let mut q = cfg.resolve_q(d)?;
    let width = |q: u32| (q as usize + 1) * p;
    match cfg.krylov_overflow {
        KrylovOverflow::Error if width(q) > n => {
            return Err(Error::invalid(alloc::format!(
                "Krylov basis width (q+1)*p = {} exceeds n = {n}; use a smaller q or p",
                width(q)
            )))
        }
        KrylovOverflow::Saturate if width(q) > n.min(d) => {
            {
                let blocks = (n.min(d) / p).max(1) as u32;
                // Largest odd q with (q+1)·p ≤ min(n, d), or 0 if only one block fits.
                q = if blocks >= 2 {
                    let cap = blocks - 1;
                    if cap % 2 == 1 {
                        cap
                    } else {
                        cap - 1
                    }
                } else {
                    0
                };
            }
        }
        _ => {}
    }

    let mut rng = SeededRng::new(cfg.seed);
    let pi = gaussian(d, p, &mut rng)?;
    let mut blocks = Vec::with_capacity(q as usize + 1);
    let mut current = a.apply(&pi)?;
    for i in 0..=q as usize {
        if i > 0 {
            current = a.apply(&a.apply_transpose(&current)?)?;
        }
        if i % cfg.reorthonormalize_every == 0 {
            current = qr_orthonormalize(&current, &mut rng)?;
        }
        blocks.push(current.clone());
    }
    let krylov = DenseMatrix::hstack(&blocks)?;
    let basis = orthonormalize_columns(&krylov, &mut rng)?;
    finish(a, cfg, basis.q, basis.replaced.len(), q)
}

/// Orthonormal basis of `AΠ`, then Rayleigh–Ritz. No iterations.
pub fn sketch_and_solve<A: LinearOperator + ?Sized>(
    a: &A,
    cfg: &RsvdConfig,
) -> Result<PartialSvdResult> {
    require_variant(cfg, Variant::SketchAndSolve)?;
    let (n, d) = (a.nrows(), a.ncols());
    cfg.validate(n, d)?;
    let mut rng = SeededRng::new(cfg.seed);
    let pi = gaussian(d, cfg.block_width(), &mut rng)?;
    let basis = orthonormalize_columns(&a.apply(&pi)?, &mut rng)?;
    finish(a, cfg, basis.q, basis.replaced.len(), 0)
}

fn finish<A: LinearOperator + ?Sized>(
    a: &A,
    cfg: &RsvdConfig,
    q_basis: DenseMatrix,
    replaced: usize,
    q_used: u32,
) -> Result<PartialSvdResult> {
    let basis_width = q_basis.cols();
    let (z, singular_values) = post_process(a, &q_basis, cfg.k)?;
    Ok(PartialSvdResult {
        z,
        singular_values,
        q_used,
        basis_width,
        replaced_columns: replaced,
        wall_time_ms: 0.0,
        variant: cfg.variant,
        seed: cfg.seed,
    })
}

/// Rayleigh–Ritz on `span(Q)`: `M = Qᵀ A Aᵀ Q`, `Z = Q Ū_k` with `Ū_k` the
/// top-`k` eigenvectors of `M`, `σ̂ᵢ = √max(λᵢ, 0)`.
///
/// For every `l ≤ k`, `Z_l Z_lᵀ A` is then the best rank-`l` Frobenius
/// approximation to `A` inside `span(Q)`. Each column of `Z` is flipped so its
/// largest-magnitude entry is positive.
pub fn post_process<A: LinearOperator + ?Sized>(
    a: &A,
    q: &DenseMatrix,
    k: usize,
) -> Result<(DenseMatrix, Vec<f64>)> {
    if q.cols() < k {
        return Err(Error::invalid(alloc::format!(
            "basis has {} columns, fewer than k = {k}",
            q.cols()
        )));
    }
    if q.rows() != a.nrows() {
        return Err(Error::DimensionMismatch {
            op: "post_process",
            left: (a.nrows(), a.ncols()),
            right: q.shape(),
        });
    }
    // M = WᵀW with W = AᵀQ, symmetric by construction.
    let w = a.apply_transpose(q)?;
    let m = w.gram();
    let eig = symmetric_eig(&m)?;
    let top = eig.eigenvectors.leading_columns(k);
    let mut z = q.matmul(&top)?;
    canonicalize_signs(&mut z);
    let sigmas = eig.eigenvalues[..k]
        .iter()
        .map(|&l| libm::sqrt(l.max(0.0)))
        .collect();
    Ok((z, sigmas))
}

/// Flips each column so its largest-magnitude entry (first on ties) is positive.
pub fn canonicalize_signs(z: &mut DenseMatrix) {
    for j in 0..z.cols() {
        let mut pivot = 0.0f64;
        for i in 0..z.rows() {
            let v = z[(i, j)];
            if v.abs() > pivot.abs() {
                pivot = v;
            }
        }
        if pivot < 0.0 {
            for i in 0..z.rows() {
                z[(i, j)] = -z[(i, j)];
            }
        }
    }
}
