//! Convergence sweeps: every (algorithm, q or ε, seed) point is factorized and
//! scored, rows come back sorted by (algorithm, q, seed).

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use rsvd_core::metrics::evaluate;
use rsvd_core::rsvd::KrylovOverflow;
use rsvd_core::{factorize, MatrixOperator, QMode, RsvdConfig, Variant};
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};
use crate::io::load_matrix;
use crate::oracle::{OracleCache, OraclePolicy};
use crate::synth::{synthesize, SyntheticSpec};

pub const CSV_HEADER: [&str; 9] = [
    "algo",
    "k",
    "p",
    "q",
    "seed",
    "frob_ratio",
    "spectral_ratio",
    "per_vector_max",
    "wall_ms",
];

/// `"path/to/file"`, `"synth:path/to/spec.json"`, or an inline
/// `{"synth": {...}}` object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputSource {
    Inline { synth: SyntheticSpec },
    Path(String),
}

impl InputSource {
    /// Relative paths are resolved against `base`.
    fn resolve(&self, base: Option<&Path>) -> Result<Loaded> {
        let join = |p: &str| match base {
            Some(b) if Path::new(p).is_relative() => b.join(p),
            _ => PathBuf::from(p),
        };
        match self {
            InputSource::Inline { synth } => Loaded::from_synth(synth),
            InputSource::Path(p) => match p.strip_prefix("synth:") {
                Some(spec) => Loaded::from_synth(&SyntheticSpec::from_json_file(join(spec))?),
                None => Ok(Loaded {
                    matrix: load_matrix(join(p))?,
                    known_sigma: None,
                }),
            },
        }
    }
}

struct Loaded {
    matrix: MatrixOperator,
    known_sigma: Option<Vec<f64>>,
}

impl Loaded {
    fn from_synth(spec: &SyntheticSpec) -> Result<Self> {
        let s = synthesize(spec)?;
        Ok(Loaded {
            matrix: s.matrix.into(),
            known_sigma: s.oracle.map(|o| o.singular_values),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Overflow {
    Error,
    Saturate,
}

impl From<Overflow> for KrylovOverflow {
    fn from(o: Overflow) -> Self {
        match o {
            Overflow::Error => KrylovOverflow::Error,
            Overflow::Saturate => KrylovOverflow::Saturate,
        }
    }
}

fn default_c() -> f64 {
    rsvd_core::rsvd::DEFAULT_Q_CONSTANT
}

fn default_every() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub input: InputSource,
    /// `si`, `bk` or `sketch`.
    pub algorithms: Vec<String>,
    pub k: usize,
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub q: Vec<u32>,
    #[serde(default)]
    pub eps: Vec<f64>,
    #[serde(default = "default_c", rename = "C", alias = "c")]
    pub c: f64,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub oracle: OraclePolicy,
    #[serde(default)]
    pub krylov_overflow: Option<Overflow>,
    #[serde(default = "default_every")]
    pub reorthonormalize_every: usize,
}

impl ExperimentSpec {
    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| BenchError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn variants(&self) -> Result<Vec<Variant>> {
        self.algorithms
            .iter()
            .map(|a| a.parse::<Variant>().map_err(|e| BenchError::Usage(e.to_string())))
            .collect()
    }

    fn q_modes(&self) -> Vec<QMode> {
        let explicit = self.q.iter().map(|&q| QMode::Explicit(q));
        let derived = self.eps.iter().map(|&epsilon| QMode::FromEpsilon { epsilon, c: self.c });
        explicit.chain(derived).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(BenchError::Usage("at least one algorithm is required".into()));
        }
        self.variants()?;
        if self.q.is_empty() && self.eps.is_empty() {
            return Err(BenchError::Usage("at least one q or eps value is required".into()));
        }
        if self.seeds.is_empty() {
            return Err(BenchError::Usage("at least one seed is required".into()));
        }
        Ok(())
    }
}

/// One scored factorization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub algo: String,
    pub k: usize,
    pub p: usize,
    /// Iterations actually run.
    pub q: u32,
    pub seed: u64,
    pub frob_ratio: f64,
    pub spectral_ratio: f64,
    pub per_vector_max: f64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Median {
    pub algo: String,
    pub q: u32,
    pub runs: usize,
    pub frob_ratio: f64,
    pub spectral_ratio: f64,
    pub per_vector_max: f64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub config: ExperimentSpec,
    pub shape: (usize, usize),
    /// Reference `σ₁ … σ_{k+1}`.
    pub oracle_sigma: Vec<f64>,
    pub medians: Vec<Median>,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub rows: Vec<Row>,
    pub summary: Summary,
}

/// Median of a nonempty slice; the mean of the middle pair for even lengths.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Loads the input and runs the sweep. Relative input paths resolve against
/// `base_dir`.
pub fn run_experiment(spec: &ExperimentSpec, base_dir: Option<&Path>, cache: &OracleCache) -> Result<ExperimentOutput> {
    spec.validate()?;
    let loaded = spec.input.resolve(base_dir)?;
    let sigma = match loaded.known_sigma {
        Some(s) => s,
        None => cache.singular_values(&loaded.matrix, spec.oracle)?,
    };
    run_on_matrix(spec, &loaded.matrix, &sigma)
}

/// The sweep itself, on an already loaded matrix and its reference spectrum.
pub fn run_on_matrix(spec: &ExperimentSpec, a: &MatrixOperator, sigma: &[f64]) -> Result<ExperimentOutput> {
    spec.validate()?;
    let variants = spec.variants()?;
    let mut points = Vec::new();
    for &v in &variants {
        for mode in spec.q_modes() {
            for &seed in &spec.seeds {
                let mut cfg = RsvdConfig::new(v, spec.k, mode, seed)
                    .with_reorthonormalize_every(spec.reorthonormalize_every);
                if let Some(p) = spec.p {
                    cfg = cfg.with_block_width(p);
                }
                if let Some(o) = spec.krylov_overflow {
                    cfg = cfg.with_krylov_overflow(o.into());
                }
                points.push(cfg);
            }
        }
    }
    let (n, d) = a.shape();
    for cfg in &points {
        cfg.validate(n, d)?;
    }

    let oracle = sigma.to_vec();
    let mut rows = points
        .par_iter()
        .map(|cfg| -> Result<Row> {
            let start = Instant::now();
            let mut result = factorize(a, cfg)?;
            result.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            let report = evaluate(a, &result, &oracle)?;
            Ok(Row {
                algo: cfg.variant.tag().to_string(),
                k: cfg.k,
                p: cfg.block_width(),
                q: result.q_used,
                seed: cfg.seed,
                frob_ratio: report.frob_ratio,
                spectral_ratio: report.spectral_ratio,
                per_vector_max: report.per_vector_max,
                wall_ms: result.wall_time_ms,
            })
        })
        .collect::<Result<Vec<Row>>>()?;
    rows.sort_by(|x, y| (&x.algo, x.q, x.seed).cmp(&(&y.algo, y.q, y.seed)));

    let mut medians = Vec::new();
    for group in rows.chunk_by(|x, y| x.algo == y.algo && x.q == y.q) {
        let col = |f: fn(&Row) -> f64| median(&group.iter().map(f).collect::<Vec<_>>());
        medians.push(Median {
            algo: group[0].algo.clone(),
            q: group[0].q,
            runs: group.len(),
            frob_ratio: col(|r| r.frob_ratio),
            spectral_ratio: col(|r| r.spectral_ratio),
            per_vector_max: col(|r| r.per_vector_max),
            wall_ms: col(|r| r.wall_ms),
        });
    }
    let summary = Summary {
        config: spec.clone(),
        shape: (n, d),
        oracle_sigma: (0..=spec.k).map(|i| sigma.get(i).copied().unwrap_or(0.0)).collect(),
        medians,
    };
    Ok(ExperimentOutput { rows, summary })
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV with the fixed header; reals carry 17 significant digits.
pub fn write_rows<W: std::io::Write>(out: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.algo.clone(),
            r.k.to_string(),
            r.p.to_string(),
            r.q.to_string(),
            r.seed.to_string(),
            fmt(r.frob_ratio),
            fmt(r.spectral_ratio),
            fmt(r.per_vector_max),
            fmt(r.wall_ms),
        ])?;
    }
    w.flush().map_err(|e| BenchError::io("<csv output>", e))
}

pub fn write_rows_to(path: impl AsRef<Path>, rows: &[Row]) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    write_rows(std::io::BufWriter::new(file), rows)
}

pub fn write_summary_to(path: impl AsRef<Path>, summary: &Summary) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(summary).map_err(|source| BenchError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    std::fs::write(path, text + "\n").map_err(|e| BenchError::io(path, e))
}
