//! Command-line driver for the hypercover toolkit: graph generation,
//! cover solving, evaluation against exact optima, disk diagnostics, and
//! offset calibration. The binary is a thin wrapper over [`run`].

pub mod args;
pub mod commands;
pub mod report;
pub mod runner;

use anyhow::Result;
use args::{Cli, Command};

/// Executes a parsed command line. Returns the process exit code: 0 when
/// every job succeeded, 1 when any job recorded an error.
pub fn run(cli: &Cli) -> Result<i32> {
    let failures = match &cli.command {
        Command::Generate(a) => commands::cmd_generate(a)?,
        Command::Solve(a) => commands::cmd_solve(a)?,
        Command::Evaluate(a) => commands::cmd_evaluate(a)?,
        Command::Diagnose(a) => commands::cmd_diagnose(a)?,
        Command::Calibrate(a) => commands::cmd_calibrate(a)?,
    };
    Ok(if failures == 0 { 0 } else { 1 })
}
