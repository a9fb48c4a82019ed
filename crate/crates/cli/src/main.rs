//! charex: runs the exact identity sweeps, density comparisons, and
//! Monte-Carlo tests from the command line and persists JSON reports.
//!
//! Exit codes: 0 = pass/accept, 1 = mathematical failure or rejection,
//! 2 = usage or input error.

use std::fmt;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

mod cmd;
mod config;
mod report;
mod svg;

use report::{Manifest, Report};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config, or input data (exit 2).
    Usage(String),
    /// An honest numerical failure: refinement budgets exhausted (exit 1).
    Math(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Math(msg) => f.write_str(msg),
        }
    }
}

impl From<charex_core::Error> for CliError {
    fn from(e: charex_core::Error) -> Self {
        use charex_core::Error;
        match e {
            Error::QuadratureNonConvergence { .. }
            | Error::CacheNonConvergence { .. }
            | Error::RootNonConvergence(_) => CliError::Math(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Worker cap: CHAREX_THREADS when set, otherwise the machine's parallelism.
pub fn worker_count() -> Result<usize, CliError> {
    match std::env::var("CHAREX_THREADS") {
        Ok(text) => match text.parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(CliError::Usage(format!(
                "CHAREX_THREADS must be a positive integer, got '{text}'"
            ))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

#[derive(Parser)]
#[command(
    name = "charex",
    version,
    about = "Verification toolkit for order-statistic characterizations of the exponential law"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively check the exact summation identities over a bounded box.
    Identities(cmd::IdentitiesArgs),
    /// Check derivative coefficients exactly; optionally rebuild the
    /// exponential density from its derivatives at zero.
    Derivatives(cmd::DerivativesArgs),
    /// Compare the two densities of a distributional statement on a grid.
    Density(cmd::DensityArgs),
    /// Two-sample Monte-Carlo test of a statement under a chosen base law.
    Mc(cmd::McArgs),
    /// Test a data file for exponentiality via the weighted-sum statement.
    Gof(cmd::GofArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started_unix_ms = report::unix_ms();
    let clock = Instant::now();
    let (name, result) = match cli.command {
        Command::Identities(args) => ("identities", cmd::identities(args)),
        Command::Derivatives(args) => ("derivatives", cmd::derivatives(args)),
        Command::Density(args) => ("density", cmd::density(args)),
        Command::Mc(args) => ("mc", cmd::mc(args)),
        Command::Gof(args) => ("gof", cmd::gof(args)),
    };
    let run = match result {
        Ok(run) => run,
        Err(err) => {
            eprintln!("charex {name}: error: {err}");
            return ExitCode::from(err.code());
        }
    };
    let manifest = Manifest {
        tool: "charex",
        version: env!("CARGO_PKG_VERSION"),
        command: name.to_string(),
        args: run.echo,
        seed: run.common.seed,
        started_unix_ms,
        finished_unix_ms: report::unix_ms(),
        elapsed_ms: clock.elapsed().as_millis(),
        outcome: run.summary.clone(),
    };
    let report = Report {
        manifest,
        payload: run.payload,
    };
    if let Some(path) = &run.common.out {
        if let Err(err) = report.write_to(path) {
            eprintln!("charex {name}: error: {err}");
            return ExitCode::from(err.code());
        }
    }
    if run.common.json {
        print!("{}", report.render());
    } else {
        println!("{}", run.summary);
    }
    ExitCode::from(u8::from(!run.pass))
}
