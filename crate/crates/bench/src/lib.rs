//! File formats, synthetic matrices, convergence sweeps and the invariant
//! battery for `rsvd-core`, plus the `rsvd-bench` command line.

pub mod cheb;
pub mod error;
pub mod experiment;
pub mod io;
pub mod oracle;
pub mod synth;
pub mod verify;

pub use error::{BenchError, Result};
pub use experiment::{run_experiment, ExperimentSpec, InputSource, Row};
pub use synth::{synth_matrix, synthesize, SyntheticSpec};
