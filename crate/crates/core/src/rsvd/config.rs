use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Which factorization to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    SimultaneousIteration,
    BlockKrylov,
    SketchAndSolve,
}

impl Variant {
    /// Short tag used in CSV output and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            Variant::SimultaneousIteration => "si",
            Variant::BlockKrylov => "bk",
            Variant::SketchAndSolve => "sketch",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "si" => Ok(Variant::SimultaneousIteration),
            "bk" => Ok(Variant::BlockKrylov),
            "sketch" => Ok(Variant::SketchAndSolve),
            other => Err(Error::invalid(alloc::format!(
                "unknown algorithm {other:?} (expected si, bk or sketch)"
            ))),
        }
    }
}

/// Default constant in front of the iteration-count formulas.
pub const DEFAULT_Q_CONSTANT: f64 = 4.0;

/// How the iteration count is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QMode {
    /// Use `q` directly (block Krylov rounds even values up to odd).
    Explicit(u32),
    /// Gap-independent count from the target accuracy.
    FromEpsilon { epsilon: f64, c: f64 },
    /// Gap-aware count using `gap = σ_k/σ_{p+1} − 1`.
    GapAware { epsilon: f64, gap: f64, c: f64 },
}

/// What block Krylov does when `(q+1)·p` exceeds the space the basis can span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KrylovOverflow {
    /// Refuse with an invalid-argument error.
    #[default]
    Error,
    /// Lower `q` to the largest odd value with `(q+1)·p ≤ min(n, d)`. Past that
    /// point the Krylov space already spans `range(A)`, so the output is the
    /// same subspace in exact arithmetic.
    Saturate,
}

/// Parameters for one factorization call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsvdConfig {
    pub k: usize,
    /// Block width of the random start; `None` means `p = k`.
    pub p: Option<usize>,
    pub variant: Variant,
    pub q_mode: QMode,
    pub seed: u64,
    /// Orthonormalize the iterate every this many products (≥ 1).
    pub reorthonormalize_every: usize,
    pub krylov_overflow: KrylovOverflow,
}

impl RsvdConfig {
    pub fn new(variant: Variant, k: usize, q_mode: QMode, seed: u64) -> Self {
        RsvdConfig {
            k,
            p: None,
            variant,
            q_mode,
            seed,
            reorthonormalize_every: 1,
            krylov_overflow: KrylovOverflow::Error,
        }
    }

    pub fn with_block_width(mut self, p: usize) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_reorthonormalize_every(mut self, every: usize) -> Self {
        self.reorthonormalize_every = every;
        self
    }

    pub fn with_krylov_overflow(mut self, policy: KrylovOverflow) -> Self {
        self.krylov_overflow = policy;
        self
    }

    pub fn block_width(&self) -> usize {
        self.p.unwrap_or(self.k)
    }

    /// Iteration count for a matrix with `d` columns, before any Krylov clamp.
    pub fn resolve_q(&self, d: usize) -> Result<u32> {
        match self.q_mode {
            QMode::Explicit(q) => Ok(match self.variant {
                Variant::SketchAndSolve => 0,
                Variant::BlockKrylov if q > 0 => round_up_odd(q),
                _ => q,
            }),
            QMode::FromEpsilon { epsilon, c } => derive_q(self.variant, d, epsilon, c),
            QMode::GapAware { epsilon, gap, c } => derive_q_gap(self.variant, d, epsilon, gap, c),
        }
    }

    /// Checks `k`, `p` and the reorthonormalization interval against an `n × d` input.
    pub fn validate(&self, n: usize, d: usize) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("target rank k must be at least 1"));
        }
        if self.k > n.min(d) {
            return Err(Error::invalid(alloc::format!(
                "target rank k = {} exceeds min(n, d) = {}",
                self.k,
                n.min(d)
            )));
        }
        let p = self.block_width();
        if p < self.k {
            return Err(Error::invalid(alloc::format!(
                "block width p = {p} is smaller than k = {}",
                self.k
            )));
        }
        if p > n {
            return Err(Error::invalid(alloc::format!(
                "block width p = {p} exceeds the row count n = {n}"
            )));
        }
        if self.reorthonormalize_every == 0 {
            return Err(Error::invalid("reorthonormalize_every must be at least 1"));
        }
        Ok(())
    }
}

fn round_up_odd(q: u32) -> u32 {
    if q % 2 == 0 {
        q + 1
    } else {
        q
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(alloc::format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    Ok(())
}

fn check_common(d: usize, c: f64) -> Result<()> {
    if d < 2 {
        return Err(Error::invalid("iteration count derivation needs d >= 2"));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::invalid(alloc::format!("constant C must be positive, got {c}")));
    }
    Ok(())
}

fn ceil_count(x: f64) -> u32 {
    libm::ceil(x).max(1.0) as u32
}

/// Gap-independent iteration count: `⌈C ln d / ε⌉` for simultaneous
/// iteration, `⌈C ln d / √ε⌉` rounded up to odd for block Krylov, `0` for
/// sketch-and-solve.
pub fn derive_q(variant: Variant, d: usize, epsilon: f64, c: f64) -> Result<u32> {
    if variant == Variant::SketchAndSolve {
        return Ok(0);
    }
    check_epsilon(epsilon)?;
    check_common(d, c)?;
    let log_d = libm::log(d as f64);
    Ok(match variant {
        Variant::SimultaneousIteration => ceil_count(c * log_d / epsilon),
        Variant::BlockKrylov => round_up_odd(ceil_count(c * log_d / libm::sqrt(epsilon))),
        Variant::SketchAndSolve => 0,
    })
}

/// Gap-dependent iteration count with `g = min(1, gap)`:
/// `⌈C ln(d/ε) / g⌉` for simultaneous iteration, `⌈C ln(d/ε) / √g⌉` rounded up
/// to odd for block Krylov.
pub fn derive_q_gap(variant: Variant, d: usize, epsilon: f64, gap: f64, c: f64) -> Result<u32> {
    if !(gap > 0.0) {
        return Err(Error::invalid(alloc::format!("gap must be positive, got {gap}")));
    }
    if variant == Variant::SketchAndSolve {
        return Ok(0);
    }
    check_epsilon(epsilon)?;
    check_common(d, c)?;
    let g = gap.min(1.0);
    let log_term = libm::log(d as f64 / epsilon);
    Ok(match variant {
        Variant::SimultaneousIteration => ceil_count(c * log_term / g),
        Variant::BlockKrylov => round_up_odd(ceil_count(c * log_term / libm::sqrt(g))),
        Variant::SketchAndSolve => 0,
    })
}
