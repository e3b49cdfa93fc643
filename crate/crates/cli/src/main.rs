//! `stabgraph`: convert stabilizer codes to graph codes and verify them.
//!
//! Exit status: 0 verified or in agreement, 1 verification failed, 2 input error.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stabgraph::oracle::DEFAULT_QUBIT_CAP;
use stabgraph::pipeline::DEFAULT_LC_BOUND;
use stabgraph::DetectionMode;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "stabgraph", version, about = "Stabilizer codes as graph codes")]
struct Cli {
    /// Worker threads for configuration sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full pipeline on a code and write Γ, Ξ, the record and a DOT graph.
    Convert(ConvertArgs),
    /// Check which error configurations a coincidence matrix detects.
    Verify(VerifyArgs),
    /// Compare graph verdicts against the state-vector oracle.
    Crosscheck(CrosscheckArgs),
    /// Re-export a record or coincidence matrix.
    Export(ExportArgs),
    /// Run the pipeline on random small codes and check its invariants.
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Strong,
    Weak,
}

impl From<Mode> for DetectionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strong => DetectionMode::Strong,
            Mode::Weak => DetectionMode::Weak,
        }
    }
}

#[derive(Debug, Args)]
struct PipelineArgs {
    /// Number of errors to correct.
    #[arg(long, default_value_t = 1)]
    e: usize,
    #[arg(long, value_enum, default_value_t = Mode::Strong)]
    mode: Mode,
    /// Largest LC orbit to search for a graph meeting the attachment conditions.
    #[arg(long, default_value_t = DEFAULT_LC_BOUND)]
    lc_bound: usize,
    /// Largest qubit count simulated by the oracle.
    #[arg(long, default_value_t = DEFAULT_QUBIT_CAP)]
    oracle_cap: usize,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    /// Code file, or a catalog name (gottesman_8_3_3, five_qubit, steane_7_1_3, four_two_two).
    code: String,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Directory for gamma.txt, xi.txt, record.json and graph.dot.
    #[arg(long, short, default_value = ".")]
    out_dir: PathBuf,
    /// Skip the oracle cross-check.
    #[arg(long)]
    no_crosscheck: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Ξ text, Ξ JSON or pipeline record.
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    e: usize,
    #[arg(long, value_enum, default_value_t = Mode::Strong)]
    mode: Mode,
    /// Also write the report as JSON ("-" for stdout instead of the table).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CrosscheckArgs {
    code: String,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Json,
    Matrix,
}

#[derive(Debug, Args)]
struct ExportArgs {
    /// Ξ text, Ξ JSON or pipeline record.
    input: PathBuf,
    #[arg(long, short, value_enum)]
    format: Format,
    /// Output file (default stdout).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    /// Largest qubit count of the random codes.
    #[arg(long, default_value_t = 6)]
    max_n: usize,
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Failed,
}

fn run(cli: Cli) -> Result<Verdict, CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Threads(e.to_string()))?;
    }
    match cli.command {
        Command::Convert(args) => commands::convert(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Crosscheck(args) => commands::crosscheck(&args),
        Command::Export(args) => commands::export(&args),
        Command::Fuzz(args) => commands::fuzz(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
