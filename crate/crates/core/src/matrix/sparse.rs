use alloc::vec;
use alloc::vec::Vec;

use super::DenseMatrix;
use crate::error::{Error, Result};

/// Compressed sparse row storage with strictly increasing column indices per
/// row and no explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrixCSR {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrixCSR {
    /// Validates raw CSR arrays.
    pub fn new(
        rows: usize,
        cols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if row_ptr.len() != rows + 1 {
            return Err(Error::invalid("row_ptr length must be rows + 1"));
        }
        if col_idx.len() != values.len() {
            return Err(Error::invalid("col_idx and values lengths differ"));
        }
        if row_ptr[0] != 0 || row_ptr[rows] != values.len() {
            return Err(Error::invalid("row_ptr must start at 0 and end at nnz"));
        }
        for i in 0..rows {
            let (start, end) = (row_ptr[i], row_ptr[i + 1]);
            if start > end {
                return Err(Error::invalid(alloc::format!(
                    "row_ptr decreases at row {i}"
                )));
            }
            let cols_in_row = &col_idx[start..end];
            if cols_in_row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid(alloc::format!(
                    "column indices not strictly increasing in row {i}"
                )));
            }
            if cols_in_row.last().is_some_and(|&c| c >= cols) {
                return Err(Error::invalid(alloc::format!(
                    "column index out of bounds in row {i}"
                )));
            }
            for (&c, &v) in cols_in_row.iter().zip(&values[start..end]) {
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: c });
                }
                if v == 0.0 {
                    return Err(Error::invalid(alloc::format!(
                        "explicit zero stored at ({i}, {c})"
                    )));
                }
            }
        }
        Ok(SparseMatrixCSR {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Assembles from `(row, col, value)` triplets. Duplicates are summed and
    /// entries that end up exactly zero are dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut sorted: Vec<(usize, usize, f64)> = Vec::with_capacity(triplets.len());
        for &(i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::invalid(alloc::format!(
                    "triplet ({i}, {j}) outside {rows}x{cols}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
            sorted.push((i, j, v));
        }
        // Stable sort keeps duplicate summation in input order.
        sorted.sort_by_key(|t| (t.0, t.1));

        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(sorted.len());
        let mut values = Vec::with_capacity(sorted.len());
        let mut idx = 0;
        while idx < sorted.len() {
            let (i, j, mut v) = sorted[idx];
            idx += 1;
            while idx < sorted.len() && sorted[idx].0 == i && sorted[idx].1 == j {
                v += sorted[idx].2;
                idx += 1;
            }
            if v != 0.0 {
                col_idx.push(j);
                values.push(v);
                row_ptr[i + 1] += 1;
            }
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self::new(rows, cols, row_ptr, col_idx, values)
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let mut row_ptr = Vec::with_capacity(m.rows() + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for i in 0..m.rows() {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v != 0.0 {
                    col_idx.push(j);
                    values.push(v);
                }
            }
            row_ptr.push(values.len());
        }
        SparseMatrixCSR {
            rows: m.rows(),
            cols: m.cols(),
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrixCSR {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Iterates `(col, value)` pairs of row `i`.
    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// `A·B` (or `Aᵀ·B` when `transpose` is set). Cost is `O(nnz · B.cols)`.
    pub fn spmm(&self, b: &DenseMatrix, transpose: bool) -> Result<DenseMatrix> {
        let (inner, outer) = if transpose {
            (self.rows, self.cols)
        } else {
            (self.cols, self.rows)
        };
        if b.rows() != inner {
            let shape = if transpose {
                (self.cols, self.rows)
            } else {
                (self.rows, self.cols)
            };
            return Err(Error::DimensionMismatch {
                op: "spmm",
                left: shape,
                right: b.shape(),
            });
        }
        let m = b.cols();
        let mut out = DenseMatrix::zeros(outer, m);
        if transpose {
            for i in 0..self.rows {
                let b_row = b.row(i);
                for (j, v) in self.row_entries(i) {
                    for (c, &x) in out.row_mut(j).iter_mut().zip(b_row) {
                        *c += v * x;
                    }
                }
            }
        } else {
            for i in 0..self.rows {
                for (j, v) in self.row_entries(i) {
                    let b_row = b.row(j);
                    for (c, &x) in out.row_mut(i).iter_mut().zip(b_row) {
                        *c += v * x;
                    }
                }
            }
        }
        Ok(out)
    }
}
