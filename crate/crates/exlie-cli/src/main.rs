//! `exlie`: build Chevalley algebras, grade them, and extract and verify the
//! structures coordinatizing their gradings.
//!
//! Machine output is JSON on stdout; a short human summary goes to stderr.
//! Exit codes: 0 success, 1 verification mismatch, 2 configuration error,
//! 3 pipeline not applicable.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use exlie::{ExlieError, Sampling};
use exlie_field::FieldError;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "exlie", version, about = "Extremal elements, gradings and their coordinatizing structures")]
struct Cli {
    /// Seed for the sampled identity checks.
    #[arg(long, global = true, default_value_t = Sampling::default().seed)]
    seed: u64,

    /// Random elements drawn per identity suite.
    #[arg(long, global = true, default_value_t = Sampling::default().samples)]
    samples: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the split Chevalley algebra of a type over a field.
    Build {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long, default_value = "gf(5)")]
        field: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the Jacobi identity and simplicity of an algebra file.
    Verify { input: PathBuf },
    /// Find a hyperbolic pair and report its 5-grading.
    Grade {
        input: PathBuf,
        /// Only `auto` is supported: the first pair found by the search.
        #[arg(long, default_value = "auto")]
        pair: String,
    },
    /// Build an l-exponential automorphism for `l` in L_1 of the grading.
    Lexp {
        input: PathBuf,
        /// Coordinates of `l` on the basis of L_1, comma separated.
        #[arg(long = "l")]
        coords: String,
        #[arg(long, default_value = "auto")]
        pair: String,
    },
    /// Run an extraction pipeline (`cns` or `qa`) with verification.
    Extract {
        kind: String,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shorthand for `extract cns`.
    Cns {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Accepted for compatibility; verification always runs.
        #[arg(long)]
        verify: bool,
    },
    /// Shorthand for `extract qa`.
    Qa {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Accepted for compatibility; verification always runs.
        #[arg(long)]
        verify: bool,
    },
    /// Compute the dimension tables of both pipelines and compare them
    /// with the known values.
    Tables {
        #[arg(long, default_value = "gf(5)")]
        field: String,
        /// Skip the verification suites and only compute dimensions.
        #[arg(long)]
        dims_only: bool,
        /// Restrict to one pipeline.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Exlie(#[from] ExlieError),
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Mismatch,
    Inapplicable,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } | CliError::Json { .. } | CliError::Field(_) => 2,
            CliError::Exlie(e) => match e {
                ExlieError::Inapplicable { .. } | ExlieError::NoExtremal => 3,
                ExlieError::UnsupportedType(_) | ExlieError::Invalid(_) | ExlieError::Field(_) => 2,
                _ => 1,
            },
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("EXLIE_THREADS") else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("EXLIE_THREADS must be a positive integer, got {value:?}")))?;
    if n == 0 {
        return Err(CliError::Config("EXLIE_THREADS must be at least 1".into()));
    }
    // A pool can only be installed once per process; a second attempt is harmless.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    let sampling = Sampling { seed: cli.seed, samples: cli.samples, ..Sampling::default() };
    match cli.command {
        Command::Build { cartan_type, field, output } => commands::build(&cartan_type, &field, output.as_deref()),
        Command::Verify { input } => commands::verify(&input),
        Command::Grade { input, pair } => commands::grade(&input, &pair),
        Command::Lexp { input, coords, pair } => commands::lexp(&input, &coords, &pair),
        Command::Extract { kind, input, output } => commands::extract(&kind, &input, output.as_deref(), sampling),
        Command::Cns { input, output, .. } => commands::extract("cns", &input, output.as_deref(), sampling),
        Command::Qa { input, output, .. } => commands::extract("qa", &input, output.as_deref(), sampling),
        Command::Tables { field, dims_only, only } => commands::tables(&field, dims_only, only.as_deref(), sampling),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Ok(Outcome::Inapplicable) => ExitCode::from(3),
        Err(e) => {
            let code = e.exit_code();
            let reason = match &e {
                CliError::Exlie(ExlieError::Inapplicable { reason }) => reason.clone(),
                other => other.to_string(),
            };
            let status = match code {
                2 => "config-error",
                3 => "inapplicable",
                _ => "mismatch",
            };
            println!("{}", serde_json::json!({ "status": status, "reason": reason }));
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
