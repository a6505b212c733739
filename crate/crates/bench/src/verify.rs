//! The invariant battery behind `rsvd-bench verify`: fixed-seed checks for
//! every module, reported as JSON.

use std::path::PathBuf;

use rayon::prelude::*;
use rsvd_core::chebyshev::{cheb_coefficients, cheb_eval, cheb_eval_recurrence, verify_lemma4, ShiftedChebyshev};
use rsvd_core::factor::{
    dense_svd_reference, orthonormalize_columns, qr_orthonormalize, spectral_norm_restarts, symmetric_eig_with,
    JacobiOptions,
};
use rsvd_core::matrix::{gaussian, matmul, spmm};
use rsvd_core::metrics::{
    additive_spectral_check, error_function, frob_error_ratio, per_vector_errors, spectral_error_ratio,
};
use rsvd_core::{factorize, DenseMatrix, MatrixOperator, QMode, RsvdConfig, SeededRng, SparseMatrixCSR, Variant};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::experiment::{run_experiment, run_on_matrix, write_rows, ExperimentSpec, InputSource};
use crate::io::{load_matrix_market, write_matrix_market};
use crate::oracle::{OracleCache, OraclePolicy};
use crate::synth::{synthesize, SyntheticSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyOptions {
    /// Relative stopping tolerance handed to the Jacobi eigensolver in the
    /// eigendecomposition check. Loosening it is the negative control.
    pub jacobi_tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            jacobi_tol: JacobiOptions::default().tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub options: VerifyOptions,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Outcome = Result<String, String>;
type CheckFn = fn(&VerifyOptions) -> Outcome;

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("matrix", "spmm_matches_densified", spmm_matches_densified),
    ("matrix", "matmul_bitwise_deterministic", matmul_bitwise_deterministic),
    ("matrix", "gaussian_reproducible", gaussian_reproducible),
    ("matrix", "matrix_market_frobenius", matrix_market_frobenius),
    ("factor", "eig_reconstruction", eig_reconstruction),
    ("factor", "qr_rank_deficient_orthonormal", qr_rank_deficient_orthonormal),
    ("factor", "svd_orthogonal_invariance", svd_orthogonal_invariance),
    ("factor", "spectral_estimate_bounded", spectral_estimate_bounded),
    ("chebyshev", "polynomial_properties", polynomial_properties),
    ("chebyshev", "odd_degree_odd_monomials", odd_degree_odd_monomials),
    ("chebyshev", "closed_form_matches_recurrence", closed_form_matches_recurrence),
    ("rsvd", "error_function_nonnegative", error_function_nonnegative),
    ("rsvd", "sigma_hat_bounded", sigma_hat_bounded),
    ("rsvd", "block_krylov_monotone_in_q", block_krylov_monotone_in_q),
    ("rsvd", "zero_iteration_equivalence", zero_iteration_equivalence),
    ("rsvd", "factorization_deterministic", factorization_deterministic),
    ("metrics", "ratios_at_least_one", ratios_at_least_one),
    ("metrics", "pythagorean_matches_direct", pythagorean_matches_direct),
    ("metrics", "per_vector_sign_invariance", per_vector_sign_invariance),
    ("metrics", "error_function_telescopes", error_function_telescopes),
    ("metrics", "rotation_invariance", rotation_invariance),
    ("metrics", "additive_spectral_bound", additive_spectral_bound),
    ("bench-cli", "synthetic_self_check", synthetic_self_check),
    ("bench-cli", "csv_schema_and_determinism", csv_schema_and_determinism),
    ("bench-cli", "input_not_mutated", input_not_mutated),
];

/// Runs every check; checks run in parallel and are reported in a fixed order.
pub fn verify_suite(opts: &VerifyOptions) -> VerifyReport {
    let checks: Vec<CheckOutcome> = CHECKS
        .par_iter()
        .map(|&(module, name, f)| {
            let (passed, detail) = match std::panic::catch_unwind(|| f(opts)) {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(_) => (false, "check panicked".to_string()),
            };
            CheckOutcome {
                module,
                name,
                passed,
                detail,
            }
        })
        .collect();
    VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        options: *opts,
        checks,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

trait OrFail<T> {
    fn or_fail(self) -> Result<T, String>;
}

impl<T, E: std::fmt::Display> OrFail<T> for Result<T, E> {
    fn or_fail(self) -> Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

fn orthonormal(n: usize, k: usize, rng: &mut SeededRng) -> Result<DenseMatrix, String> {
    qr_orthonormalize(&gaussian(n, k, rng).or_fail()?, rng).or_fail()
}

fn decaying(n: usize, d: usize, rate: f64, seed: u64) -> Result<(DenseMatrix, Vec<f64>), String> {
    let spectrum: Vec<f64> = (0..n.min(d)).map(|i| rate.powi(i as i32)).collect();
    let s = synthesize(&SyntheticSpec::new(n, d, spectrum, seed)).or_fail()?;
    let sigma = s.oracle.ok_or("no oracle for a small matrix")?.singular_values;
    Ok((s.matrix, sigma))
}

fn projected(a: &DenseMatrix, z: &DenseMatrix) -> Result<DenseMatrix, String> {
    z.matmul(&z.transpose_matmul(a).or_fail()?).or_fail()
}

fn bits_equal(a: &DenseMatrix, b: &DenseMatrix) -> bool {
    a.shape() == b.shape() && a.as_slice().iter().zip(b.as_slice()).all(|(x, y)| x.to_bits() == y.to_bits())
}

fn random_sparse(rows: usize, cols: usize, density: f64, rng: &mut SeededRng) -> Result<SparseMatrixCSR, String> {
    let mut triplets = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if rng.next_uniform() < density {
                triplets.push((i, j, rng.next_gaussian()));
            }
        }
    }
    SparseMatrixCSR::from_triplets(rows, cols, &triplets).or_fail()
}

struct TempPath(PathBuf);

impl TempPath {
    fn new(name: &str) -> Self {
        TempPath(std::env::temp_dir().join(format!("rsvd-verify-{}-{name}", std::process::id())))
    }
}

impl Drop for TempPath {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

fn spmm_matches_densified(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(101);
    let s = random_sparse(30, 20, 0.1, &mut rng)?;
    let dense = s.to_dense();
    let b = gaussian(20, 5, &mut rng).or_fail()?;
    let y = gaussian(30, 5, &mut rng).or_fail()?;
    let e1 = spmm(&s, &b, false).or_fail()?.sub(&matmul(&dense, &b).or_fail()?).or_fail()?.max_abs();
    let e2 = spmm(&s, &y, true)
        .or_fail()?
        .sub(&matmul(&dense.transpose(), &y).or_fail()?)
        .or_fail()?
        .max_abs();
    ensure(e1.max(e2) < 1e-12, || format!("max abs diff {:e}", e1.max(e2)))?;
    Ok(format!("max abs diff {:e}", e1.max(e2)))
}

fn matmul_bitwise_deterministic(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(102);
    let a = gaussian(64, 48, &mut rng).or_fail()?;
    let b = gaussian(48, 12, &mut rng).or_fail()?;
    let first = matmul(&a, &b).or_fail()?;
    for _ in 0..3 {
        ensure(bits_equal(&first, &matmul(&a, &b).or_fail()?), || "repeat product differs".into())?;
    }
    Ok("4 identical products".into())
}

fn gaussian_reproducible(_: &VerifyOptions) -> Outcome {
    let a = gaussian(50, 7, &mut SeededRng::new(42)).or_fail()?;
    let b = gaussian(50, 7, &mut SeededRng::new(42)).or_fail()?;
    let c = gaussian(50, 7, &mut SeededRng::new(43)).or_fail()?;
    ensure(bits_equal(&a, &b), || "same seed gave different draws".into())?;
    ensure(!bits_equal(&a, &c), || "different seeds gave identical draws".into())?;
    Ok("seed 42 reproduced".into())
}

fn matrix_market_frobenius(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(103);
    let s = random_sparse(40, 25, 0.15, &mut rng)?;
    let tmp = TempPath::new("frob.mtx");
    write_matrix_market(&tmp.0, &s.into()).or_fail()?;
    let loaded = load_matrix_market(&tmp.0).or_fail()?;
    let via_load = loaded.to_dense().frobenius_norm_sq();
    // Independent accumulation straight from the text.
    let text = std::fs::read_to_string(&tmp.0).or_fail()?;
    let mut direct = 0.0;
    for line in text.lines().filter(|l| !l.starts_with('%')).skip(1) {
        let v: f64 = line.split_whitespace().nth(2).ok_or("short entry line")?.parse().or_fail()?;
        direct += v * v;
    }
    ensure((via_load - direct).abs() <= 1e-12 * direct.max(1.0), || {
        format!("loaded {via_load:e} vs text {direct:e}")
    })?;
    Ok(format!("‖A‖²_F = {direct:.12e}"))
}

fn eig_reconstruction(opts: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(104);
    let g = gaussian(12, 12, &mut rng).or_fail()?;
    let m = DenseMatrix::from_fn(12, 12, |i, j| g[(i, j)] + g[(j, i)]);
    let e = symmetric_eig_with(
        &m,
        JacobiOptions {
            tol: opts.jacobi_tol,
            ..JacobiOptions::default()
        },
    )
    .or_fail()?;
    let mut vl = e.eigenvectors.clone();
    vl.scale_columns(&e.eigenvalues);
    let rebuilt = vl.matmul(&e.eigenvectors.transpose()).or_fail()?;
    let err = rebuilt.sub(&m).or_fail()?.max_abs() / m.frobenius_norm();
    ensure(err < 1e-10, || format!("relative reconstruction error {err:e} at tol {:e}", opts.jacobi_tol))?;
    Ok(format!("relative reconstruction error {err:e}"))
}

fn qr_rank_deficient_orthonormal(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(105);
    let low = gaussian(40, 3, &mut rng).or_fail()?.matmul(&gaussian(3, 9, &mut rng).or_fail()?).or_fail()?;
    let out = orthonormalize_columns(&low, &mut rng).or_fail()?;
    let defect = out.q.orthonormality_defect();
    ensure(out.q.cols() == 9 && defect < 1e-12, || format!("width {} defect {defect:e}", out.q.cols()))?;
    ensure(out.replaced.len() == 6, || format!("replaced {} columns, expected 6", out.replaced.len()))?;
    Ok(format!("defect {defect:e}, {} replaced", out.replaced.len()))
}

fn svd_orthogonal_invariance(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(106);
    let a = gaussian(15, 10, &mut rng).or_fail()?;
    let l = orthonormal(15, 15, &mut rng)?;
    let r = orthonormal(10, 10, &mut rng)?;
    let b = l.matmul(&a).or_fail()?.matmul(&r).or_fail()?;
    let sa = dense_svd_reference(&a.into()).or_fail()?;
    let sb = dense_svd_reference(&b.into()).or_fail()?;
    let worst = sa
        .singular_values
        .iter()
        .zip(&sb.singular_values)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    ensure(worst < 1e-10 * sa.sigma(0), || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:e}"))
}

fn spectral_estimate_bounded(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(107);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let a = gaussian(25, 18, &mut rng).or_fail()?;
        let s1 = dense_svd_reference(&a.clone().into()).or_fail()?.sigma(0);
        let est = spectral_norm_restarts(&a, 1e-12, 100_000, 3, &mut rng).or_fail()?;
        ensure(est <= s1 * (1.0 + 1e-8), || format!("estimate {est} above σ₁ = {s1}"))?;
        ensure((est - s1).abs() <= 1e-6 * s1, || format!("estimate {est} far from σ₁ = {s1}"))?;
        worst = worst.max((est - s1).abs() / s1);
    }
    Ok(format!("worst relative gap {worst:e}"))
}

fn polynomial_properties(_: &VerifyOptions) -> Outcome {
    let mut count = 0;
    for alpha in [0.5, 1.0, 3.0] {
        for gamma in [0.01, 0.25, 1.0] {
            for q in [3, 9, 21] {
                let p = ShiftedChebyshev::new(alpha, gamma, q).or_fail()?;
                let r = verify_lemma4(&p, 2001).or_fail()?;
                ensure(r.all_passed(), || format!("α={alpha} γ={gamma} q={q}: {r:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} parameter sets"))
}

fn odd_degree_odd_monomials(_: &VerifyOptions) -> Outcome {
    for q in (1..=15u32).step_by(2) {
        let c = cheb_coefficients(q);
        let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (deg, v) in c.iter().enumerate().filter(|(d, _)| d % 2 == 0) {
            ensure(v.abs() <= 1e-12 * scale, || format!("q={q} has x^{deg} coefficient {v}"))?;
        }
    }
    Ok("q = 1, 3, …, 15".into())
}

fn closed_form_matches_recurrence(_: &VerifyOptions) -> Outcome {
    let mut worst: f64 = 0.0;
    for q in 0..=60 {
        for i in 0..=90 {
            let x = 1.0 + 0.1 * f64::from(i);
            let (a, b) = (cheb_eval(q, x), cheb_eval_recurrence(q, x));
            worst = worst.max((a - b).abs() / b.abs());
        }
    }
    ensure(worst <= 1e-9, || format!("relative deviation {worst:e}"))?;
    Ok(format!("relative deviation {worst:e}"))
}

const VARIANTS: [Variant; 3] = [Variant::SimultaneousIteration, Variant::BlockKrylov, Variant::SketchAndSolve];

fn error_function_nonnegative(_: &VerifyOptions) -> Outcome {
    let (a, sigma) = decaying(40, 30, 0.85, 108)?;
    let op: MatrixOperator = a.clone().into();
    let mut runs = 0;
    for v in VARIANTS {
        for seed in 0..4 {
            let out = factorize(&a, &RsvdConfig::new(v, 5, QMode::Explicit(3), seed)).or_fail()?;
            for l in 0..=5 {
                let e = error_function(&op, &out.z, l, &sigma).or_fail()?;
                ensure(e >= -1e-9, || format!("{v} seed {seed} l={l}: ℰ = {e:e}"))?;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, l = 0..=5"))
}

fn sigma_hat_bounded(_: &VerifyOptions) -> Outcome {
    let (a, sigma) = decaying(60, 40, 0.9, 109)?;
    for v in VARIANTS {
        for seed in 0..4 {
            let cfg = RsvdConfig::new(v, 6, QMode::Explicit(5), seed).with_block_width(8);
            let out = factorize(&a, &cfg).or_fail()?;
            for (i, s) in out.singular_values.iter().enumerate() {
                ensure(*s <= sigma[i] + 1e-8 * sigma[0], || format!("{v} seed {seed}: σ̂_{} = {s} > {}", i + 1, sigma[i]))?;
            }
        }
    }
    Ok("σ̂ᵢ ≤ σᵢ + 1e-8 σ₁".into())
}

fn block_krylov_monotone_in_q(_: &VerifyOptions) -> Outcome {
    let mut pairs = 0;
    for (rate, seed) in [(0.97, 110u64), (0.99, 111)] {
        let (a, sigma) = decaying(120, 80, rate, seed)?;
        let op: MatrixOperator = a.clone().into();
        let allowance = 1e-8 * sigma[0] * sigma[0];
        let tail = sigma[8] * sigma[8];
        for run_seed in 0..3 {
            let mut prev: Option<f64> = None;
            for q in [1u32, 3, 5, 7, 9] {
                let out = factorize(&a, &RsvdConfig::new(Variant::BlockKrylov, 8, QMode::Explicit(q), run_seed)).or_fail()?;
                let abs = per_vector_errors(&op, &out.z, &sigma).or_fail()?.max() * tail;
                if let Some(p) = prev {
                    ensure(abs <= p + allowance, || format!("rate {rate} seed {run_seed}: q={q} error {abs:e} > {p:e}"))?;
                    pairs += 1;
                }
                prev = Some(abs);
            }
        }
    }
    Ok(format!("{pairs} consecutive pairs"))
}

fn zero_iteration_equivalence(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(112);
    let a = gaussian(30, 25, &mut rng).or_fail()?;
    let run = |v| factorize(&a, &RsvdConfig::new(v, 4, QMode::Explicit(0), 9)).or_fail();
    let (si, bk, sk) = (
        run(Variant::SimultaneousIteration)?,
        run(Variant::BlockKrylov)?,
        run(Variant::SketchAndSolve)?,
    );
    let d1 = si.z.sub(&sk.z).or_fail()?.max_abs();
    let d2 = bk.z.sub(&sk.z).or_fail()?.max_abs();
    ensure(d1.max(d2) < 1e-10, || format!("max deviation {:e}", d1.max(d2)))?;
    Ok(format!("max deviation {:e}", d1.max(d2)))
}

fn factorization_deterministic(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(113);
    let a = gaussian(60, 40, &mut rng).or_fail()?;
    for v in VARIANTS {
        let cfg = RsvdConfig::new(v, 4, QMode::Explicit(3), 77).with_block_width(6);
        let (x, y) = (factorize(&a, &cfg).or_fail()?, factorize(&a, &cfg).or_fail()?);
        ensure(bits_equal(&x.z, &y.z), || format!("{v} differs between runs"))?;
    }
    Ok("bitwise identical Z".into())
}

fn ratios_at_least_one(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(114);
    let mut worst = f64::INFINITY;
    for _ in 0..10 {
        let a: MatrixOperator = gaussian(20, 14, &mut rng).or_fail()?.into();
        let svd = dense_svd_reference(&a).or_fail()?;
        let z = orthonormal(20, 3, &mut rng)?;
        let f = frob_error_ratio(&a, &z, &svd).or_fail()?.value;
        let s = spectral_error_ratio(&a, &z, &svd).or_fail()?.value;
        ensure(f.min(s) >= 1.0 - 1e-10, || format!("ratios {f} / {s}"))?;
        worst = worst.min(f.min(s));
    }
    Ok(format!("smallest ratio {worst}"))
}

fn pythagorean_matches_direct(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(115);
    let a = gaussian(24, 16, &mut rng).or_fail()?;
    let op: MatrixOperator = a.clone().into();
    let svd = dense_svd_reference(&op).or_fail()?;
    let z = orthonormal(24, 4, &mut rng)?;
    let ratio = frob_error_ratio(&op, &z, &svd).or_fail()?.value;
    let direct = a.sub(&projected(&a, &z)?).or_fail()?.frobenius_norm()
        / svd.singular_values[4..].iter().map(|s| s * s).sum::<f64>().sqrt();
    let rel = (ratio - direct).abs() / direct;
    ensure(rel <= 1e-9, || format!("relative gap {rel:e}"))?;
    Ok(format!("relative gap {rel:e}"))
}

fn per_vector_sign_invariance(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(116);
    let a: MatrixOperator = gaussian(18, 12, &mut rng).or_fail()?.into();
    let svd = dense_svd_reference(&a).or_fail()?;
    let z = orthonormal(18, 4, &mut rng)?;
    let mut flipped = z.clone();
    flipped.scale_columns(&[-1.0, 1.0, -1.0, -1.0]);
    let (x, y) = (
        per_vector_errors(&a, &z, &svd).or_fail()?,
        per_vector_errors(&a, &flipped, &svd).or_fail()?,
    );
    ensure(x == y, || format!("{:?} vs {:?}", x.errors, y.errors))?;
    Ok("identical under column flips".into())
}

fn error_function_telescopes(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(117);
    let a = gaussian(20, 16, &mut rng).or_fail()?;
    let op: MatrixOperator = a.clone().into();
    let svd = dense_svd_reference(&op).or_fail()?;
    let z = orthonormal(20, 5, &mut rng)?;
    for l in 1..=5 {
        let step = error_function(&op, &z, l, &svd).or_fail()? - error_function(&op, &z, l - 1, &svd).or_fail()?;
        let zl = DenseMatrix::from_columns(20, &[z.column(l - 1)]);
        let want = svd.sigma(l - 1).powi(2) - zl.transpose_matmul(&a).or_fail()?.frobenius_norm_sq();
        ensure((step - want).abs() <= 1e-10 * svd.sigma(0).powi(2), || format!("l={l}: {step} vs {want}"))?;
    }
    Ok("l = 1..=5".into())
}

fn rotation_invariance(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(118);
    let a = gaussian(16, 10, &mut rng).or_fail()?;
    let op: MatrixOperator = a.clone().into();
    let svd = dense_svd_reference(&op).or_fail()?;
    let z = orthonormal(16, 3, &mut rng)?;
    let r = orthonormal(16, 16, &mut rng)?;
    let rop: MatrixOperator = r.matmul(&a).or_fail()?.into();
    let rz = r.matmul(&z).or_fail()?;
    let f = (
        frob_error_ratio(&op, &z, &svd).or_fail()?.value,
        frob_error_ratio(&rop, &rz, &svd).or_fail()?.value,
    );
    let s = (
        spectral_error_ratio(&op, &z, &svd).or_fail()?.value,
        spectral_error_ratio(&rop, &rz, &svd).or_fail()?.value,
    );
    let pv = (
        per_vector_errors(&op, &z, &svd).or_fail()?.max(),
        per_vector_errors(&rop, &rz, &svd).or_fail()?.max(),
    );
    for (name, (x, y)) in [("frobenius", f), ("spectral", s), ("per-vector", pv)] {
        ensure((x - y).abs() <= 1e-9 * x.abs().max(1.0), || format!("{name}: {x} vs {y}"))?;
    }
    Ok("all three metrics agree".into())
}

fn additive_spectral_bound(_: &VerifyOptions) -> Outcome {
    let mut rng = SeededRng::new(119);
    let mut count = 0;
    for _ in 0..4 {
        let a = gaussian(30, 20, &mut rng).or_fail()?;
        let op: MatrixOperator = a.clone().into();
        let svd = dense_svd_reference(&op).or_fail()?;
        for _ in 0..5 {
            let y = orthonormal(30, 4, &mut rng)?;
            let check = additive_spectral_check(&op, &projected(&a, &y)?, 4, &svd).or_fail()?;
            ensure(check.passed, || format!("{check:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} candidates"))
}

fn adversarial_spec() -> SyntheticSpec {
    let mut spectrum = vec![10f64.sqrt(); 6];
    spectrum.extend(std::iter::repeat(1.0).take(100));
    SyntheticSpec::new(106, 106, spectrum, 120)
}

fn synthetic_self_check(_: &VerifyOptions) -> Outcome {
    synthesize(&SyntheticSpec::new(3, 3, vec![3.0, 2.0, 1.0], 1)).or_fail()?;
    let zero = synthesize(&SyntheticSpec::new(5, 4, vec![0.0, 0.0], 2)).or_fail()?;
    ensure(zero.matrix.max_abs() == 0.0, || "zero spectrum gave a nonzero matrix".into())?;
    let s = synthesize(&adversarial_spec()).or_fail()?;
    let sigma = s.oracle.ok_or("no oracle")?.singular_values;
    ensure((sigma[5] * sigma[5] - 10.0).abs() < 1e-9, || format!("σ₆² = {}", sigma[5] * sigma[5]))?;
    // The residual's top singular values cluster at √10, so the exact
    // reference is used rather than power iteration.
    let mut rng = SeededRng::new(121);
    for _ in 0..5 {
        let z = orthonormal(106, 5, &mut rng)?;
        let resid = s.matrix.sub(&projected(&s.matrix, &z)?).or_fail()?;
        let top = dense_svd_reference(&resid.into()).or_fail()?.sigma(0);
        let r = top / sigma[5];
        ensure((r - 1.0).abs() < 1e-6, || format!("spectral ratio {r} for a random Z"))?;
    }
    Ok("spectra reproduced; adversarial spectral ratio 1 for random Z".into())
}

fn small_spec(input: InputSource) -> ExperimentSpec {
    ExperimentSpec {
        input,
        algorithms: vec!["si".into(), "bk".into()],
        k: 3,
        p: None,
        q: vec![1, 3, 5],
        eps: vec![],
        c: rsvd_core::rsvd::DEFAULT_Q_CONSTANT,
        seeds: (0..5).collect(),
        output: None,
        oracle: OraclePolicy::Compute,
        krylov_overflow: None,
        reorthonormalize_every: 1,
    }
}

fn strip_wall(csv: &[u8]) -> Vec<String> {
    String::from_utf8_lossy(csv)
        .lines()
        .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head).to_string())
        .collect()
}

fn csv_schema_and_determinism(_: &VerifyOptions) -> Outcome {
    let (a, sigma) = decaying(40, 30, 0.9, 122)?;
    let op: MatrixOperator = a.into();
    let spec = small_spec(InputSource::Path(String::new()));
    let mut first = Vec::new();
    let mut second = Vec::new();
    write_rows(&mut first, &run_on_matrix(&spec, &op, &sigma).or_fail()?.rows).or_fail()?;
    write_rows(&mut second, &run_on_matrix(&spec, &op, &sigma).or_fail()?.rows).or_fail()?;
    let header = String::from_utf8_lossy(&first).lines().next().unwrap_or_default().to_string();
    ensure(header == crate::experiment::CSV_HEADER.join(","), || format!("header '{header}'"))?;
    let lines = strip_wall(&first);
    ensure(lines.len() == 31, || format!("{} lines, expected 31", lines.len()))?;
    ensure(lines == strip_wall(&second), || "reruns differ outside wall_ms".into())?;
    Ok("30 rows, stable bytes".into())
}

fn input_not_mutated(_: &VerifyOptions) -> Outcome {
    let (a, _) = decaying(30, 20, 0.8, 123)?;
    let tmp = TempPath::new("input.mtx");
    write_matrix_market(&tmp.0, &a.into()).or_fail()?;
    let hash = |p: &PathBuf| -> Result<Vec<u8>, String> { Ok(Sha256::digest(std::fs::read(p).or_fail()?).to_vec()) };
    let before = hash(&tmp.0)?;
    let spec = small_spec(InputSource::Path(tmp.0.display().to_string()));
    run_experiment(&spec, None, &OracleCache::new(None)).or_fail()?;
    ensure(hash(&tmp.0)? == before, || "input file changed".into())?;
    Ok("input hash unchanged".into())
}
