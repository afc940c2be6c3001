// SPDX-License-Identifier: MIT OR Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod error;
mod input;

use error::CliError;

/// Exact changepoint detection in the mean under a multiscale or BIC penalty.
#[derive(Debug, Parser)]
#[command(name = "msfpop", version)]
struct Cli {
    /// Worker threads for study commands (defaults to all cores).
    #[arg(long, env = "MSFPOP_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Segment a CSV series and print a JSON result document.
    Segment(SegmentArgs),
    /// False-positive rate of the multiscale penalty on change-free signals.
    Calibrate(StudyArgs),
    /// Wall-clock timings per method, length and number of changes.
    Bench(StudyArgs),
    /// Accuracy study over simulated scenarios.
    Simulate(StudyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PenaltyArg {
    Multiscale,
    Bic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Msfpop,
    Mspelt,
    Op,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PruningArg {
    None,
    Constant,
    Adaptive,
}

#[derive(Debug, Args)]
pub struct SegmentArgs {
    /// CSV input, one value per line with an optional weight column ("-" for stdin).
    input: PathBuf,
    /// Output file (defaults to stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "multiscale")]
    penalty: PenaltyArg,
    /// Length-reward weight [multiscale, default 2.25].
    #[arg(long)]
    beta: Option<f64>,
    /// Constant part of the per-segment penalty [multiscale, default 9].
    #[arg(long)]
    gamma: Option<f64>,
    /// Per-segment penalty [bic, default 2 ln n].
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value = "msfpop")]
    solver: SolverArg,
    /// Future-candidate sampling: all or rand:<k> [msfpop, default rand:1].
    #[arg(long)]
    sampling: Option<String>,
    /// Pruning constant [mspelt, default adaptive].
    #[arg(long, value_enum)]
    pruning: Option<PruningArg>,
    /// Sampler seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Noise variance: fixed:<v> or mad (estimated from first differences).
    #[arg(long, default_value = "fixed:1")]
    variance: String,
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    /// TOML study configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV (defaults to stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Overrides the seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return error::usage("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(CliError::usage)?;
    }
    match cli.command {
        Command::Segment(args) => commands::segment(&args),
        Command::Calibrate(args) => commands::calibrate(&args),
        Command::Bench(args) => commands::bench(&args),
        Command::Simulate(args) => commands::simulate(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("msfpop: {e}");
            e.exit_code()
        }
    }
}
