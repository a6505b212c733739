use std::path::PathBuf;

/// Everything the harness can fail with. [`BenchError::exit_code`] maps each
/// onto the CLI's exit status.
#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}: {msg}", path.display())]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] rsvd_core::Error),
    #[error("check failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, BenchError>;

impl BenchError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        BenchError::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }

    /// 1 for failed checks, 2 for bad arguments or configs, 3 for I/O and
    /// unreadable input files.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Check(_) => 1,
            BenchError::Usage(_) | BenchError::Core(_) | BenchError::Json { .. } => 2,
            BenchError::Io { .. } | BenchError::Parse { .. } | BenchError::Csv(_) => 3,
        }
    }
}
