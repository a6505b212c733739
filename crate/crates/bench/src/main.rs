use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rsvd_bench::cheb::{cheb_table, write_cheb_table};
use rsvd_bench::experiment::{run_experiment, write_rows_to, write_summary_to, ExperimentSpec, InputSource, Overflow};
use rsvd_bench::io::write_matrix;
use rsvd_bench::oracle::{OracleCache, OraclePolicy};
use rsvd_bench::synth::{synth_matrix, SyntheticSpec};
use rsvd_bench::verify::{verify_suite, VerifyOptions};
use rsvd_bench::{BenchError, Result};

#[derive(Parser)]
#[command(name = "rsvd-bench", version, about = "Randomized partial SVD benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factorize one input with one algorithm and seed.
    Run(RunArgs),
    /// Run a sweep described by a JSON config.
    Sweep(SweepArgs),
    /// Generate a matrix with a prescribed spectrum.
    Synth {
        #[arg(long)]
        spec: PathBuf,
        /// `.mtx` or `.csv`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate the shifted Chebyshev polynomial against the power polynomial.
    Cheb {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the invariant battery.
    Verify {
        #[arg(long)]
        json: Option<PathBuf>,
        /// Jacobi tolerance for the eigendecomposition check.
        #[arg(long)]
        jacobi_tol: Option<f64>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// A `.mtx`/`.csv` path or `synth:<spec.json>`.
    #[arg(long)]
    input: String,
    #[arg(long, value_parser = ["si", "bk", "sketch"])]
    algo: String,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, conflicts_with_all = ["eps", "c"])]
    q: Option<u32>,
    #[arg(long, requires = "c")]
    eps: Option<f64>,
    #[arg(long = "C", id = "c", requires = "eps")]
    c: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Clamp q when the Krylov basis would not fit.
    #[arg(long)]
    saturate: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Overrides the config's algorithms, comma separated.
    #[arg(long, value_delimiter = ',')]
    algos: Option<Vec<String>>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
}

fn run(args: RunArgs) -> Result<()> {
    let q = match (args.q, args.eps) {
        (Some(q), _) => vec![q],
        (None, None) if args.algo == "sketch" => vec![0],
        (None, None) => return Err(BenchError::Usage("give either --q or --eps with --C".into())),
        (None, Some(_)) => vec![],
    };
    let spec = ExperimentSpec {
        input: InputSource::Path(args.input),
        algorithms: vec![args.algo],
        k: args.k,
        p: args.p,
        q,
        eps: args.eps.into_iter().collect(),
        c: args.c.unwrap_or(rsvd_core::rsvd::DEFAULT_Q_CONSTANT),
        seeds: vec![args.seed],
        output: Some(args.out.clone()),
        oracle: OraclePolicy::Cached,
        krylov_overflow: args.saturate.then_some(Overflow::Saturate),
        reorthonormalize_every: 1,
    };
    let out = run_experiment(&spec, None, &OracleCache::from_env())?;
    write_rows_to(&args.out, &out.rows)?;
    if let Some(path) = args.summary {
        write_summary_to(path, &out.summary)?;
    }
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<()> {
    let mut spec = ExperimentSpec::from_json_file(&args.config)?;
    if let Some(a) = args.algos {
        spec.algorithms = a;
    }
    if let Some(k) = args.k {
        spec.k = k;
    }
    if args.p.is_some() {
        spec.p = args.p;
    }
    if let Some(q) = args.q {
        spec.q = q;
        spec.eps.clear();
    }
    if let Some(s) = args.seeds {
        spec.seeds = s;
    }
    let out_path = args
        .out
        .or_else(|| spec.output.clone())
        .ok_or_else(|| BenchError::Usage("no output path: pass --out or set \"output\" in the config".into()))?;
    let base = args.config.parent().map(PathBuf::from);
    let out = run_experiment(&spec, base.as_deref(), &OracleCache::from_env())?;
    write_rows_to(&out_path, &out.rows)?;
    if let Some(path) = args.summary {
        write_summary_to(path, &out.summary)?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Sweep(args) => sweep(args),
        Command::Synth { spec, out } => {
            let m = synth_matrix(&SyntheticSpec::from_json_file(spec)?)?;
            write_matrix(out, &m.into())
        }
        Command::Cheb {
            alpha,
            gamma,
            q,
            grid,
            out,
        } => write_cheb_table(out, &cheb_table(alpha, gamma, q, grid)?),
        Command::Verify { json, jacobi_tol } => {
            let mut opts = VerifyOptions::default();
            if let Some(t) = jacobi_tol {
                opts.jacobi_tol = t;
            }
            let report = verify_suite(&opts);
            for c in &report.checks {
                println!("{} {}::{} {}", if c.passed { "PASS" } else { "FAIL" }, c.module, c.name, c.detail);
            }
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).map_err(|source| BenchError::Json {
                    path: path.clone(),
                    source,
                })?;
                std::fs::write(&path, text + "\n").map_err(|e| BenchError::Io { path, source: e })?;
            }
            if report.passed {
                Ok(())
            } else {
                let names: Vec<_> = report.failures().map(|c| format!("{}::{}", c.module, c.name)).collect();
                Err(BenchError::Check(names.join(", ")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rsvd-bench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
