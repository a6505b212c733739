//! Test matrices with a prescribed spectrum, `A = U diag(σ) Vᵀ`.

use std::path::Path;

use rsvd_core::factor::{dense_svd_reference, qr_orthonormalize, SvdResult, ORACLE_MAX_SIDE};
use rsvd_core::matrix::gaussian;
use rsvd_core::{DenseMatrix, MatrixOperator, SeededRng};
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

/// One run of singular values, `count` long.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Segment {
    /// `start + j·step`.
    Linear { count: usize, start: f64, step: f64 },
    /// `start · ratioʲ`.
    Geometric { count: usize, start: f64, ratio: f64 },
    Constant { count: usize, value: f64 },
}

impl Segment {
    fn extend_into(&self, out: &mut Vec<f64>) {
        match *self {
            Segment::Linear { count, start, step } => out.extend((0..count).map(|j| start + j as f64 * step)),
            Segment::Geometric { count, start, ratio } => {
                out.extend((0..count).map(|j| start * ratio.powi(j as i32)))
            }
            Segment::Constant { count, value } => out.extend(std::iter::repeat(value).take(count)),
        }
    }
}

/// Either the explicit values or a concatenation of segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Spectrum {
    Values(Vec<f64>),
    Segments { segments: Vec<Segment> },
}

impl Spectrum {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Spectrum::Values(v) => v.clone(),
            Spectrum::Segments { segments } => {
                let mut out = Vec::new();
                for s in segments {
                    s.extend_into(&mut out);
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub n: usize,
    pub d: usize,
    pub spectrum: Spectrum,
    #[serde(default)]
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn new(n: usize, d: usize, spectrum: Vec<f64>, seed: u64) -> Self {
        SyntheticSpec {
            n,
            d,
            spectrum: Spectrum::Values(spectrum),
            seed,
        }
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| BenchError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    /// The spectrum, checked to be finite, nonnegative, descending and no
    /// longer than `min(n, d)`.
    pub fn validated_spectrum(&self) -> Result<Vec<f64>> {
        if self.n == 0 || self.d == 0 {
            return Err(BenchError::Usage(format!(
                "synthetic matrix must be non-empty, got {} x {}",
                self.n, self.d
            )));
        }
        let values = self.spectrum.values();
        if values.len() > self.n.min(self.d) {
            return Err(BenchError::Usage(format!(
                "spectrum has {} values but min(n, d) = {}",
                values.len(),
                self.n.min(self.d)
            )));
        }
        for (i, &s) in values.iter().enumerate() {
            if !s.is_finite() || s < 0.0 {
                return Err(BenchError::Usage(format!("spectrum[{i}] = {s} is not a nonnegative number")));
            }
            if i > 0 && s > values[i - 1] {
                return Err(BenchError::Usage(format!(
                    "spectrum is not descending at index {i} ({} then {s})",
                    values[i - 1]
                )));
            }
        }
        Ok(values)
    }
}

/// A generated matrix and, when it was small enough to check, the oracle
/// that verified it.
#[derive(Debug, Clone)]
pub struct Synthesized {
    pub matrix: DenseMatrix,
    pub spectrum: Vec<f64>,
    pub oracle: Option<SvdResult>,
}

/// Builds the matrix and checks it against the dense reference. Matching is
/// on squared values, `|σ̂² − σ²| ≤ 1e-10 σ₁²`, with any extra reference
/// values held to the same bound; the Gram-route reference cannot resolve
/// small singular values to relative accuracy.
pub fn synthesize(spec: &SyntheticSpec) -> Result<Synthesized> {
    let spectrum = spec.validated_spectrum()?;
    let r = spectrum.len();
    let matrix = if r == 0 || spectrum[0] == 0.0 {
        DenseMatrix::zeros(spec.n, spec.d)
    } else {
        let mut rng = SeededRng::new(spec.seed);
        let u = qr_orthonormalize(&gaussian(spec.n, r, &mut rng)?, &mut rng)?;
        let v = qr_orthonormalize(&gaussian(spec.d, r, &mut rng)?, &mut rng)?;
        let mut us = u;
        us.scale_columns(&spectrum);
        us.matmul(&v.transpose())?
    };

    if spec.n.min(spec.d) > ORACLE_MAX_SIDE {
        return Ok(Synthesized {
            matrix,
            spectrum,
            oracle: None,
        });
    }
    let op = MatrixOperator::Dense(matrix);
    let oracle = dense_svd_reference(&op)?;
    let top = spectrum.first().copied().unwrap_or(0.0);
    let tol = 1e-10 * top * top;
    let width = oracle.singular_values.len().max(r);
    for i in 0..width {
        let want = spectrum.get(i).copied().unwrap_or(0.0);
        let got = oracle.sigma(i);
        if (got * got - want * want).abs() > tol {
            return Err(BenchError::Check(format!(
                "synthetic spectrum mismatch at index {i}: built {want:e}, reference {got:e}"
            )));
        }
    }
    let MatrixOperator::Dense(matrix) = op else { unreachable!() };
    Ok(Synthesized {
        matrix,
        spectrum,
        oracle: Some(oracle),
    })
}

/// [`synthesize`] without the oracle.
pub fn synth_matrix(spec: &SyntheticSpec) -> Result<DenseMatrix> {
    synthesize(spec).map(|s| s.matrix)
}
