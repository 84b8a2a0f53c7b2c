//! Batch front end for `coupled-modes`: reads a JSON experiment config and
//! writes CSV tables or JSON reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::ExperimentConfig;
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "coupled-modes", version, about = "Gaussian dynamics of two coupled bosonic modes")]
pub struct Cli {
    /// Write the result here instead of stdout. The file only appears once
    /// the whole result is computed.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Echo the normalized config instead of running the command.
    #[arg(long, global = true)]
    pub print_config: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CSV of N, S_vn and ν̃₋ over the time grid.
    Evolve { config: PathBuf },
    /// JSON report on the critical coupling and the κ₋ exponent.
    Critical { config: PathBuf },
    /// JSON gate list of S(t).
    Decompose {
        config: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        time: f64,
    },
    /// CSV over a one-parameter range.
    Sweep { config: PathBuf },
}

impl Command {
    fn config_path(&self) -> &PathBuf {
        match self {
            Command::Evolve { config }
            | Command::Critical { config }
            | Command::Decompose { config, .. }
            | Command::Sweep { config } => config,
        }
    }
}

/// Runs the command and returns the bytes to write.
pub fn execute(cli: &Cli) -> Result<Vec<u8>, CliError> {
    let cfg = ExperimentConfig::load(cli.command.config_path())?;
    if cli.print_config {
        return Ok(format::json_bytes(&cfg.to_json()));
    }
    Ok(match &cli.command {
        Command::Evolve { .. } => commands::evolve_csv(&cfg)?.into_bytes(),
        Command::Critical { .. } => format::json_bytes(&commands::critical_report(&cfg)?),
        Command::Decompose { time, .. } => {
            format::json_bytes(&commands::decompose_report(&cfg, *time)?)
        }
        Command::Sweep { .. } => commands::sweep_csv(&cfg)?.into_bytes(),
    })
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let bytes = execute(cli)?;
    format::write_output(cli.output.as_deref(), &bytes)
}
