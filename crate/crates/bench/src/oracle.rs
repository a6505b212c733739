//! Reference singular values, optionally cached on disk by content hash.
//!
//! Cache files are `<sha256>.sv` in the directory named by
//! `RSVD_ORACLE_CACHE`: the 8-byte tag `RSVDSV01`, a little-endian `u64`
//! count, then that many little-endian `f64` values.

use std::path::{Path, PathBuf};

use rsvd_core::factor::{dense_svd_reference, ORACLE_MAX_SIDE};
use rsvd_core::MatrixOperator;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{BenchError, Result};

pub const CACHE_ENV: &str = "RSVD_ORACLE_CACHE";
const TAG: &[u8; 8] = b"RSVDSV01";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OraclePolicy {
    /// Always recompute; the cache is still written when configured.
    #[default]
    Compute,
    /// Use a cached entry when present, otherwise compute and store.
    Cached,
}

/// SHA-256 over shape, storage kind and raw little-endian contents.
pub fn content_hash(a: &MatrixOperator) -> String {
    let mut h = Sha256::new();
    let (rows, cols) = a.shape();
    h.update((rows as u64).to_le_bytes());
    h.update((cols as u64).to_le_bytes());
    match a {
        MatrixOperator::Dense(d) => {
            h.update(b"dense");
            for v in d.as_slice() {
                h.update(v.to_le_bytes());
            }
        }
        MatrixOperator::Sparse(s) => {
            h.update(b"csr");
            for &p in s.row_ptr() {
                h.update((p as u64).to_le_bytes());
            }
            for &c in s.col_idx() {
                h.update((c as u64).to_le_bytes());
            }
            for v in s.values() {
                h.update(v.to_le_bytes());
            }
        }
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, Default)]
pub struct OracleCache {
    dir: Option<PathBuf>,
}

impl OracleCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        OracleCache { dir }
    }

    pub fn from_env() -> Self {
        OracleCache::new(std::env::var_os(CACHE_ENV).map(PathBuf::from))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn entry(&self, hash: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{hash}.sv")))
    }

    pub fn load(&self, hash: &str) -> Result<Option<Vec<f64>>> {
        let Some(path) = self.entry(hash) else { return Ok(None) };
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(BenchError::io(path, e)),
        };
        decode(&bytes).map(Some).ok_or_else(|| BenchError::parse(path, 1, "corrupt oracle cache entry"))
    }

    pub fn store(&self, hash: &str, values: &[f64]) -> Result<()> {
        let Some(path) = self.entry(hash) else { return Ok(()) };
        let dir = self.dir.as_ref().expect("entry implies dir");
        std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
        std::fs::write(&path, encode(values)).map_err(|e| BenchError::io(path, e))
    }

    /// Singular values of `a`, descending, following `policy`.
    pub fn singular_values(&self, a: &MatrixOperator, policy: OraclePolicy) -> Result<Vec<f64>> {
        let hash = content_hash(a);
        if policy == OraclePolicy::Cached {
            if let Some(v) = self.load(&hash)? {
                return Ok(v);
            }
        }
        let (rows, cols) = a.shape();
        if rows.min(cols) > ORACLE_MAX_SIDE {
            return Err(BenchError::Usage(format!(
                "the dense reference is limited to min(n, d) <= {ORACLE_MAX_SIDE} (input is {rows} x {cols}); \
                 place precomputed singular values at {}/{hash}.sv and use oracle policy \"cached\"",
                self.dir.as_ref().map_or_else(|| format!("${CACHE_ENV}"), |d| d.display().to_string()),
            )));
        }
        let values = dense_svd_reference(a)?.singular_values;
        self.store(&hash, &values)?;
        Ok(values)
    }
}

pub fn encode(values: &[f64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + 8 * values.len());
    out.extend_from_slice(TAG);
    out.extend_from_slice(&(values.len() as u64).to_le_bytes());
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode(bytes: &[u8]) -> Option<Vec<f64>> {
    let rest = bytes.strip_prefix(TAG.as_slice())?;
    let (count, body) = rest.split_first_chunk::<8>()?;
    let count = usize::try_from(u64::from_le_bytes(*count)).ok()?;
    if body.len() != count.checked_mul(8)? {
        return None;
    }
    Some(
        body.chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect(),
    )
}
