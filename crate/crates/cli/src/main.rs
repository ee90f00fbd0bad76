//! `evscale`: evidence statistics, transition points and scale audits from the
//! command line. Every subcommand writes a CSV (or JSON Lines) table.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::args::ModeArg;
use crate::output::{Format, OutputSpec};

#[derive(Debug, Parser)]
#[command(name = "evscale", version, about = "Evidence statistics and measurement-scale audits for binomial data")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,

    /// Write output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Display log-valued columns in base B (computations stay natural-log).
    #[arg(long = "log-base", global = true, value_name = "B")]
    log_base: Option<f64>,

    /// Numerical tolerance (root-finding width, or the affine test for audits).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Count handling for `compute`: integer counts or continuous relaxation.
    #[arg(long, global = true, value_enum, default_value = "exact")]
    mode: ModeArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evidence statistics for one outcome.
    Compute(commands::compute::ComputeArgs),
    /// Curve data behind the transition-point figure.
    Figure1(commands::figure1::Figure1Args),
    /// Transition points over a list of trial counts.
    Trp(commands::trp::TrpArgs),
    /// The two routes to a zero log Bayes factor.
    ZeroPaths(commands::zero_paths::ZeroPathArgs),
    /// Scale audits: transformations, rank agreement, difference comparisons.
    Audit(commands::audit::AuditArgs),
}

/// Global settings shared by every subcommand.
pub struct Globals {
    pub output: OutputSpec,
    pub tol: Option<f64>,
    pub mode: ModeArg,
}

/// A failure tagged with the exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments; exit status 2.
    Usage { flag: &'static str, message: String },
    /// The computation itself failed; exit status 1.
    Compute(String),
    /// The reader went away (e.g. `| head`); not an error.
    BrokenPipe,
}

impl CliError {
    pub fn usage(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::Usage { flag, message: message.into() }
    }
}

impl From<evscale_core::Error> for CliError {
    fn from(e: evscale_core::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::BrokenPipe;
        }
        CliError::Compute(format!("write failed: {e}"))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let base = cli.log_base.unwrap_or(std::f64::consts::E);
    if !(base > 0.0) || base == 1.0 || !base.is_finite() {
        return Err(CliError::usage("--log-base", format!("base must be positive and not 1, got {base}")));
    }
    if let Some(t) = cli.tol {
        if !(t > 0.0) {
            return Err(CliError::usage("--tol", format!("tolerance must be positive, got {t}")));
        }
    }
    let globals = Globals {
        output: OutputSpec { format: cli.format, destination: cli.out, log_display_base: base },
        tol: cli.tol,
        mode: cli.mode,
    };
    match cli.command {
        Command::Compute(a) => commands::compute::run(&a, &globals),
        Command::Figure1(a) => commands::figure1::run(&a, &globals),
        Command::Trp(a) => commands::trp::run(&a, &globals),
        Command::ZeroPaths(a) => commands::zero_paths::run(&a, &globals),
        Command::Audit(a) => commands::audit::run(&a, &globals),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) | Err(CliError::BrokenPipe) => ExitCode::SUCCESS,
        Err(CliError::Usage { flag, message }) => {
            eprintln!("error: invalid value for {flag}: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
