use alloc::string::String;
use core::fmt;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument violated an operation's precondition.
    InvalidArgument(String),
    /// Operand shapes are incompatible.
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A matrix entry was NaN or infinite.
    NonFinite { row: usize, col: usize },
    /// Jacobi sweeps exhausted before the off-diagonal mass fell below tolerance.
    NotConverged { sweeps: usize, off_diagonal: f64 },
    /// The dense oracle refuses matrices whose smaller side exceeds the guard.
    OracleTooLarge { min_side: usize, limit: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "dimension mismatch in {op}: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::NonFinite { row, col } => {
                write!(f, "non-finite entry at ({row}, {col})")
            }
            Error::NotConverged {
                sweeps,
                off_diagonal,
            } => write!(
                f,
                "Jacobi eigensolver did not converge after {sweeps} sweeps \
                 (off-diagonal mass {off_diagonal:e})"
            ),
            Error::OracleTooLarge { min_side, limit } => write!(
                f,
                "dense reference SVD refused: smaller side {min_side} exceeds {limit}; \
                 supply a cached oracle or use a smaller matrix"
            ),
        }
    }
}

impl core::error::Error for Error {}
