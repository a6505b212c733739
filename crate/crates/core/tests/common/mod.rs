#![allow(dead_code)]

use rsvd_core::factor::qr_orthonormalize;
use rsvd_core::matrix::gaussian;
use rsvd_core::{DenseMatrix, SeededRng, SparseMatrixCSR};

/// Entrywise triple loop, summing in the same order for every entry.
pub fn triple_loop(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let mut c = DenseMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = 0.0;
            for l in 0..a.cols() {
                s += a[(i, l)] * b[(l, j)];
            }
            c[(i, j)] = s;
        }
    }
    c
}

pub fn random_orthogonal(n: usize, rng: &mut SeededRng) -> DenseMatrix {
    qr_orthonormalize(&gaussian(n, n, rng).unwrap(), rng).unwrap()
}

pub fn random_orthonormal(n: usize, k: usize, rng: &mut SeededRng) -> DenseMatrix {
    qr_orthonormalize(&gaussian(n, k, rng).unwrap(), rng).unwrap()
}

pub fn random_symmetric(n: usize, rng: &mut SeededRng) -> DenseMatrix {
    let g = gaussian(n, n, rng).unwrap();
    DenseMatrix::from_fn(n, n, |i, j| g[(i, j)] + g[(j, i)])
}

pub fn random_sparse(rows: usize, cols: usize, density: f64, rng: &mut SeededRng) -> SparseMatrixCSR {
    let mut triplets = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if rng.next_uniform() < density {
                triplets.push((i, j, rng.next_gaussian()));
            }
        }
    }
    SparseMatrixCSR::from_triplets(rows, cols, &triplets).unwrap()
}

/// `U diag(σ) Vᵀ` with random orthonormal factors.
pub fn with_spectrum(n: usize, d: usize, sigma: &[f64], rng: &mut SeededRng) -> DenseMatrix {
    let u = random_orthonormal(n, sigma.len(), rng);
    let v = random_orthonormal(d, sigma.len(), rng);
    let mut us = u;
    us.scale_columns(sigma);
    us.matmul(&v.transpose()).unwrap()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &DenseMatrix) -> f64 {
    let n = m.rows();
    let mut a = m.clone();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
            .unwrap();
        if a[(pivot, col)] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                let t = a[(col, j)];
                a[(col, j)] = a[(pivot, j)];
                a[(pivot, j)] = t;
            }
            det = -det;
        }
        det *= a[(col, col)];
        for i in col + 1..n {
            let f = a[(i, col)] / a[(col, col)];
            for j in col..n {
                a[(i, j)] -= f * a[(col, j)];
            }
        }
    }
    det
}

/// Roots of `det(M − λI)` by scanning for sign changes and bisecting, descending.
pub fn char_poly_roots(m: &DenseMatrix, scan_points: usize) -> Vec<f64> {
    let n = m.rows();
    let bound = m.frobenius_norm() + 1.0;
    let f = |lambda: f64| {
        let shifted = DenseMatrix::from_fn(n, n, |i, j| m[(i, j)] - if i == j { lambda } else { 0.0 });
        determinant(&shifted)
    };
    let mut roots = Vec::new();
    let step = 2.0 * bound / scan_points as f64;
    let mut lo = -bound;
    let mut f_lo = f(lo);
    for i in 1..=scan_points {
        let hi = -bound + step * i as f64;
        let f_hi = f(hi);
        if f_lo == 0.0 {
            roots.push(lo);
        } else if f_lo.signum() != f_hi.signum() {
            let (mut a, mut b, mut fa) = (lo, hi, f_lo);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                let fm = f(mid);
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if fm.signum() == fa.signum() {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        lo = hi;
        f_lo = f_hi;
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

pub fn max_abs_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    a.sub(b).unwrap().max_abs()
}
