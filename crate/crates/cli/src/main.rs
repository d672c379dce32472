//! `shapeinv`: spectra, wavefunctions and verification reports for
//! shape-invariant superpotentials.

mod commands;
mod job;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use job::JobArgs;

#[derive(Debug, Parser)]
#[command(name = "shapeinv", version, about = "Shape-invariant superpotentials: spectra, states and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Family catalogue
    Families {
        #[command(subcommand)]
        action: FamiliesAction,
    },
    /// Table of E_k, optionally against the finite-difference oracle
    Spectrum {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long)]
        kmax: Option<usize>,
        /// Add finite-difference gaps and deviations
        #[arg(long)]
        oracle: bool,
        /// Oracle truncation and size `a,b,N`
        #[arg(long, allow_hyphen_values = true)]
        oracle_grid: Option<String>,
    },
    /// Sample ζ_k and V on a grid (CSV unless --json)
    Wavefunction {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run one check and exit 0 if it is within tolerance
    Verify {
        #[arg(value_enum)]
        which: Check,
        #[command(flatten)]
        job: JobArgs,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Finite-difference oracle
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Debug, Subcommand)]
enum FamiliesAction {
    /// List family ids (and extension ids with --extensions)
    List {
        #[arg(long)]
        extensions: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum OracleAction {
    /// Compare E_k gaps (or list eigenvalues for an extension)
    Compare {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        oracle_grid: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Si,
    Cond1,
    Cond2,
    ExtSi,
    Ladder,
    Orthonormal,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(shapeinv::Error),
}

impl From<shapeinv::Error> for CliError {
    fn from(e: shapeinv::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Core(e) if e.is_numerical() => write!(f, "numerical failure: {e}"),
            CliError::Core(e) => write!(f, "validation error: {e}"),
        }
    }
}

/// Printed body and whether the job met its tolerance.
pub struct Outcome {
    pub body: String,
    pub pass: bool,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Families { action: FamiliesAction::List { extensions, json } } => Ok(commands::list(extensions, json)),
        Command::Spectrum { job, kmax, oracle, oracle_grid } => {
            commands::spectrum(&job.resolve()?, kmax, oracle || oracle_grid.is_some(), oracle_grid.as_deref())
        }
        Command::Wavefunction { job, k } => {
            let job = job.resolve()?;
            commands::wavefunction_cmd(&job, k.or(job.k))
        }
        Command::Verify { which, job, k } => {
            let job = job.resolve()?;
            commands::verify(&job, which, k.or(job.k))
        }
        Command::Oracle { action: OracleAction::Compare { job, kmax, oracle_grid } } => {
            commands::oracle_compare(&job.resolve()?, kmax, oracle_grid.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", out.body.trim_end());
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
