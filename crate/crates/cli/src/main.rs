//! Command-line driver: diagram arithmetic, cellularity verification and quantum group bases.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on malformed input.

mod qgrp;
mod tl;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "cellcat", version, about = "Exact verification of cellular categories")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized spot checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Temperley-Lieb diagrams
    #[command(subcommand)]
    Tl(tl::TlCommand),
    /// Verify the cell axioms for a datum
    Verify(verify::VerifyArgs),
    /// Canonical bases of tensor powers of the quantum sl2 module
    #[command(subcommand)]
    Qgrp(qgrp::QgrpCommand),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

pub fn input_error(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// A finished command: its JSON report, a plain-text rendering and the overall verdict.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Tl(cmd) => tl::run(cmd),
        Command::Verify(args) => verify::run(args, cli.seed),
        Command::Qgrp(cmd) => qgrp::run(cmd),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n",
        Format::Text => report.text.clone(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|report| emit(&cli, &report).map(|()| report.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
