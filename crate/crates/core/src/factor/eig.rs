use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Eigenpairs of a symmetric matrix, eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct EigResult {
    pub eigenvalues: Vec<f64>,
    /// Column `i` pairs with `eigenvalues[i]`.
    pub eigenvectors: DenseMatrix,
}

/// Stopping rule for the cyclic Jacobi sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius mass is below `tol · ‖M‖_F`.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions {
            tol: 1e-14,
            max_sweeps: 50,
        }
    }
}

/// Input asymmetry tolerated before symmetrization, relative to `max(1, max|M|)`.
const SYMMETRY_TOL: f64 = 1e-10;

pub fn symmetric_eig(m: &DenseMatrix) -> Result<EigResult> {
    symmetric_eig_with(m, JacobiOptions::default())
}

/// Cyclic Jacobi eigensolver on `(M + Mᵀ)/2`.
///
/// Rotations run row by row over the strict upper triangle. Ties between
/// eigenvalues keep the column order the sweeps produced.
pub fn symmetric_eig_with(m: &DenseMatrix, opts: JacobiOptions) -> Result<EigResult> {
    let asym = m.asymmetry().ok_or_else(|| {
        Error::invalid(alloc::format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        ))
    })?;
    if asym > SYMMETRY_TOL * m.max_abs().max(1.0) {
        return Err(Error::invalid(alloc::format!(
            "matrix is not symmetric (max asymmetry {asym:e})"
        )));
    }
    let n = m.rows();
    let mut a = m.symmetrized();
    let mut v = DenseMatrix::identity(n);
    let scale = a.frobenius_norm();
    let threshold = opts.tol * scale;

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweep = 0;
    while !converged && sweep < opts.max_sweeps {
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q, sweep);
            }
        }
        sweep += 1;
        converged = off_diagonal_norm(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NotConverged {
            sweeps: sweep,
            off_diagonal: off_diagonal_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let eigenvectors = DenseMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigResult {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    libm::sqrt(sum)
}

/// Annihilates `a[p][q]` with one Jacobi rotation, accumulating it into `v`.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize, sweep: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    // Past the first few sweeps, entries too small to move the diagonal are dropped.
    let g = 100.0 * apq.abs();
    if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
        a[(p, q)] = 0.0;
        a[(q, p)] = 0.0;
        return;
    }
    let h = aqq - app;
    let t = if h.abs() + g == h.abs() {
        apq / h
    } else {
        let theta = 0.5 * h / apq;
        let t = 1.0 / (theta.abs() + libm::sqrt(1.0 + theta * theta));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;
    let n = a.rows();
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        a[(r, p)] = new_rp;
        a[(p, r)] = new_rp;
        a[(r, q)] = new_rq;
        a[(q, r)] = new_rq;
    }
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - s * vrq;
        v[(r, q)] = s * vrp + c * vrq;
    }
}
