//! `qes` — command-line front end for the QES spectrum and SUSY engine.
//!
//! Verbs: `list`, `solve`, `susy`, `verify`. Exit codes: 0 pass,
//! 1 verification failure, 2 bad input, 3 degenerate spectrum,
//! 4 new singularity in the partner potential.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qes::QesError;

/// Exit codes of the command-line contract.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const VERIFY_FAIL: u8 = 1;
    pub const BAD_INPUT: u8 = 2;
    pub const DEGENERATE: u8 = 3;
    pub const NEW_POLE: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(
    name = "qes",
    version,
    about = "Quasi-exactly solvable spectra, Bethe roots and SUSY partners"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the case catalog.
    List {
        /// Show a single case.
        #[arg(long)]
        case: Option<String>,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Solve the algebraic spectrum and Bethe roots.
    Solve(RunArgs),
    /// Build the SUSY partner and emit plot data (CSV) plus a JSON summary.
    Susy(RunArgs),
    /// Run the full verification suite.
    Verify(RunArgs),
}

/// Arguments shared by `solve`, `susy` and `verify`.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Case id (see `qes list`).
    #[arg(long)]
    pub case: String,
    /// Parameter assignment `name=value` (repeatable). Without any, the
    /// case's representative parameters are used.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Number of Bethe roots (polynomial degree).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Index (by ascending energy) of the seed state; default lowest.
    #[arg(long)]
    pub seed_index: Option<usize>,
    /// Index of the other state; default next-lowest.
    #[arg(long)]
    pub other_index: Option<usize>,
    /// Grid `min:max:points` on the physical axis (algebraic variable for Lamé).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Output file.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// JSON output on stdout.
    #[arg(long)]
    pub json: bool,
    /// Debug mutation: flip the sign of the second-moment term of V₂.
    #[arg(long, hide = true)]
    pub flip_v2_correction: bool,
}

/// Maps an engine error to the exit-code contract.
pub fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<QesError>() {
        Some(
            QesError::DegenerateSpectrum { .. }
            | QesError::DegreeDrop { .. }
            | QesError::RootCollision { .. },
        ) => exit::DEGENERATE,
        Some(_) => exit::BAD_INPUT,
        None => exit::BAD_INPUT,
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        e.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List { case, json } => commands::list(case.as_deref(), json),
        Command::Solve(args) => commands::solve(&args),
        Command::Susy(args) => commands::susy(&args),
        Command::Verify(args) => commands::verify(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) if is_broken_pipe(&err) => ExitCode::from(exit::PASS),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_code(&err))
        }
    }
}
