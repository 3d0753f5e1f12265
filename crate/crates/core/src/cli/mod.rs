// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success, 2 configuration or usage error, 3 I/O error,
//! 4 domain error, 5 oracle distance above tolerance, 6 Fock truncation not converged.

mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::channels::DEFAULT_MAX_KICKS;
use crate::error::Error;
use config::RunConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;
pub const EXIT_ORACLE: i32 = 5;
pub const EXIT_TRUNCATION: i32 = 6;

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    /// Report text of an oracle comparison that exceeded its tolerance.
    OracleTolerance(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lib(Error::Io(e))
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Parse { .. } => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        Error::TruncationNotConverged { .. } => EXIT_TRUNCATION,
        _ => EXIT_DOMAIN,
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LogBaseArg {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Debug, Parser)]
#[command(
    name = "deltakick",
    version,
    about = "Exact delta-kick qubit channels and their divisibility"
)]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (default: output.dir from the config, else the working directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks only; channel construction is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Logarithm base for entropies (default: log_base from the config, else e).
    #[arg(long = "log-base", global = true, value_enum)]
    log_base: Option<LogBaseArg>,
    /// Tolerance on negative χ eigenvalues and on Bloch-ball violations.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Largest number of kicks enumerated exactly.
    #[arg(long = "max-kicks", global = true)]
    max_kicks: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the channel, write it and the per-kick trajectory.
    Simulate,
    /// CP- and P-divisibility of the transition maps.
    Divisibility,
    /// Scalars over a one- or two-parameter grid.
    Sweep,
    /// Compare against the truncated Fock-space oracle.
    OracleCheck,
    /// Fixed point of one round of kicks.
    FixedPoint,
}

fn settings(cli: &Cli) -> Result<commands::Settings, Error> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config PATH is required".into()))?;
    let cfg = RunConfig::load(path).map_err(|e| match e {
        Error::Io(io) => Error::Config(format!("cannot read {}: {io}", path.display())),
        other => other,
    })?;
    let log_base = match cli.log_base {
        Some(LogBaseArg::E) => crate::analysis::LogBase::E,
        Some(LogBaseArg::Two) => crate::analysis::LogBase::Two,
        None => cfg.log_base()?,
    };
    let tol = cli.tol.or(cfg.tol).unwrap_or(crate::analysis::CP_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Config(format!("--tol must be positive, got {tol}")));
    }
    Ok(commands::Settings {
        out: cli
            .out
            .clone()
            .or_else(|| cfg.output.dir.clone())
            .unwrap_or_else(|| PathBuf::from(".")),
        seed: cli.seed.or(cfg.seed),
        log_base,
        tol,
        max_kicks: cli.max_kicks.or(cfg.max_kicks).unwrap_or(DEFAULT_MAX_KICKS),
        cfg,
    })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let s = match settings(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let res = match cli.command {
        Command::Simulate => commands::simulate(&s),
        Command::Divisibility => commands::divisibility(&s),
        Command::Sweep => commands::sweep(&s),
        Command::OracleCheck => commands::oracle_check(&s),
        Command::FixedPoint => commands::fixed_point_cmd(&s),
    };
    match res {
        Ok(text) => {
            print!("{text}");
            EXIT_OK
        }
        Err(CliError::OracleTolerance(text)) => {
            print!("{text}");
            eprintln!("error: oracle distance exceeds tolerance {}", s.cfg.oracle.tolerance);
            EXIT_ORACLE
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
