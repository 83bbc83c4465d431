//! `qdeform`: run identity suites, truncation scans and contraction sweeps.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails (or a
//! truncation has no admissible solution), 2 on usage or configuration errors.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => commands::verify(args),
        Command::Scan(args) => commands::scan(args),
        Command::Contract(args) => commands::contract(args),
        Command::Solve(args) => commands::solve(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
