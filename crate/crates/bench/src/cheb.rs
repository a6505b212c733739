//! `(x, p(x), power)` tables for comparing the Chebyshev filter with the
//! plain power polynomial.

use std::path::Path;

use rsvd_core::chebyshev::{uniform_grid, ShiftedChebyshev};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebRow {
    pub x: f64,
    pub p: f64,
    pub power: f64,
}

/// `grid` uniform points on `[0, 2(1+γ)α]`, plus the anchor `(1+γ)α` itself
/// when the grid misses it.
pub fn cheb_table(alpha: f64, gamma: f64, q: u32, grid: usize) -> Result<Vec<ChebRow>> {
    if grid < 2 {
        return Err(BenchError::Usage(format!("grid needs at least 2 points, got {grid}")));
    }
    let poly = ShiftedChebyshev::new(alpha, gamma, q)?;
    let anchor = poly.anchor();
    let mut xs = uniform_grid(0.0, 2.0 * anchor, grid);
    if !xs.contains(&anchor) {
        xs.push(anchor);
        xs.sort_by(f64::total_cmp);
    }
    Ok(xs
        .into_iter()
        .map(|x| ChebRow {
            x,
            p: poly.eval(x),
            power: poly.power_comparison(x),
        })
        .collect())
}

pub fn write_cheb_table(path: impl AsRef<Path>, rows: &[ChebRow]) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
    w.write_record(["x", "p", "power"])?;
    for r in rows {
        w.write_record([format!("{:.16e}", r.x), format!("{:.16e}", r.p), format!("{:.16e}", r.power)])?;
    }
    w.flush().map_err(|e| BenchError::io(path, e))
}
