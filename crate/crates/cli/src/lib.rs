//! `tseoh` command line: evolve heuristics, simulate policies, convert
//! traces, run strategy ablations and render run reports.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.

pub mod ablate;
pub mod config;
pub mod evolve;
pub mod ingest;
pub mod report;
pub mod rundir;
pub mod simulate;

use std::fmt::Display;

use clap::{Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

pub(crate) fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub(crate) fn runtime(e: impl Display) -> CliError {
    CliError::Runtime(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "tseoh", version, about = "Evolve and evaluate edge task scheduling heuristics")]
pub struct Cli {
    /// More log output (repeat for trace level).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a scoring heuristic and write a run directory.
    Evolve(evolve::EvolveArgs),
    /// Run one policy on one instance.
    Simulate(simulate::SimulateArgs),
    /// Convert a trace into an instance JSON file.
    Ingest(ingest::IngestArgs),
    /// One evolution run per strategy group, summarised in a table.
    Ablate(ablate::AblateArgs),
    /// Summarise a run or ablation directory.
    Report(report::ReportArgs),
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evolve(a) => evolve::cmd_evolve(&a),
        Command::Simulate(a) => simulate::cmd_simulate(&a),
        Command::Ingest(a) => ingest::cmd_ingest(&a),
        Command::Ablate(a) => ablate::cmd_ablate(&a),
        Command::Report(a) => report::cmd_report(&a),
    }
}
