//! Batch front end for the signedrel library: dataset statistics, pair
//! scoring and experiment reproduction with machine-readable outputs.
//!
//! Primary outputs (JSON/CSV) go to stdout or `--out`; human-readable
//! progress goes to stderr. Every flag can also be set through an `SR_`
//! environment variable (`--data` ↔ `SR_DATA`, and so on).
//!
//! Exit codes: 0 success, 1 data error (unreadable or malformed input),
//! 2 configuration error (bad flags, task/data mismatch), 3 solver error.

mod eval;
mod score;
mod stats;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use signedrel::graph::{load_edge_list_path, EdgeFormat};
use signedrel::{Error, MeasureSpec, SignedGraph};

#[derive(Parser)]
#[command(
    name = "signedrel",
    version,
    about = "Signed-network relevance: dataset statistics, pair scoring and experiment runs"
)]
struct Cli {
    /// Worker threads for parallel solves (default: all cores).
    #[arg(long, global = true, env = "SR_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dataset counters, reciprocity, triad census and degree histograms.
    Stats(stats::StatsArgs),
    /// Score an explicit list of labeled node pairs.
    Score(score::ScoreArgs),
    /// Run a link-sign or tie-strength experiment.
    Eval(eval::EvalArgs),
}

/// Flags shared by every subcommand that reads an edge list.
#[derive(Args)]
struct DataArgs {
    /// Edge-list file.
    #[arg(long, env = "SR_DATA")]
    data: PathBuf,

    /// Input layout: `csv_weighted` (src,dst,rating,time rows) or
    /// `whitespace_signed` (src dst sign rows). Default: inferred from the
    /// file extension.
    #[arg(long, env = "SR_FORMAT")]
    format: Option<String>,

    /// Keep edge direction (the default).
    #[arg(long, overrides_with = "undirected")]
    directed: bool,

    /// Merge reciprocal rows into undirected edges.
    #[arg(long, env = "SR_UNDIRECTED", overrides_with = "directed")]
    undirected: bool,
}

impl DataArgs {
    fn directed(&self) -> bool {
        // Direction is kept unless --undirected was the last word.
        self.directed || !self.undirected
    }

    fn load(&self) -> Result<SignedGraph, Error> {
        let format = resolve_format(&self.data, self.format.as_deref())?;
        let g = load_edge_list_path(&self.data, format, self.directed())?;
        eprintln!(
            "loaded {}: {} nodes, {} positive / {} negative edges",
            self.data.display(),
            g.node_count(),
            g.pos_edge_count(),
            g.neg_edge_count()
        );
        Ok(g)
    }
}

fn resolve_format(path: &Path, flag: Option<&str>) -> Result<EdgeFormat, Error> {
    if let Some(name) = flag {
        return match name.to_ascii_lowercase().as_str() {
            "csv_weighted" | "csv" => Ok(EdgeFormat::CsvWeighted),
            "whitespace_signed" | "whitespace" => Ok(EdgeFormat::WhitespaceSigned),
            other => Err(Error::InvalidParameter(format!(
                "unknown format {other:?} (expected csv_weighted or whitespace_signed)"
            ))),
        };
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => Ok(EdgeFormat::CsvWeighted),
        Some(ext) if matches!(ext.to_ascii_lowercase().as_str(), "txt" | "tsv" | "edges") => {
            Ok(EdgeFormat::WhitespaceSigned)
        }
        _ => Err(Error::InvalidParameter(format!(
            "cannot infer the format of {}; pass --format",
            path.display()
        ))),
    }
}

/// Measure parameter overrides; unset flags keep the measure defaults.
#[derive(Args)]
struct ParamArgs {
    /// Katz attenuation per path edge.
    #[arg(long, env = "SR_BETA")]
    beta: Option<f64>,

    /// Katz maximum path length.
    #[arg(long, env = "SR_GAMMA")]
    gamma: Option<u32>,

    /// Restart/decay factor for RWR and ASCOS++.
    #[arg(long, env = "SR_C")]
    c: Option<f64>,

    /// Iterative-solver convergence tolerance.
    #[arg(long, env = "SR_TOL")]
    tol: Option<f64>,

    /// Iterative-solver iteration cap.
    #[arg(long, env = "SR_MAX_ITER")]
    max_iter: Option<u32>,
}

impl ParamArgs {
    fn apply(&self, mut spec: MeasureSpec) -> Result<MeasureSpec, Error> {
        if let Some(beta) = self.beta {
            spec.beta = beta;
        }
        if let Some(gamma) = self.gamma {
            spec.gamma = gamma;
        }
        if let Some(c) = self.c {
            spec.c = c;
        }
        if let Some(tol) = self.tol {
            spec.tol = tol;
        }
        if let Some(max_iter) = self.max_iter {
            spec.max_iter = max_iter;
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Write the primary payload to `out`, or to stdout when absent.
fn write_output(out: Option<&Path>, payload: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            std::fs::write(path, payload)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{payload}"),
    }
    Ok(())
}

fn exit_class(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Io(_) => 1,
        Error::Solver(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    if let Some(workers) = cli.workers {
        if workers == 0 {
            return Err(Error::InvalidParameter(
                "--workers must be at least 1".into(),
            ));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    }
    match cli.command {
        Command::Stats(args) => stats::run(&args),
        Command::Score(args) => score::run(&args),
        Command::Eval(args) => eval::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_class(&e))
        }
    }
}
