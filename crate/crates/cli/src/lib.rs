//! Configuration-driven front end: reads a TOML run description, runs one
//! computation and writes CSV or JSON tables, each with a JSON metadata
//! sidecar.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod units;

use clap::Parser;
use commands::{execute, Command};
use config::{validate, Format};
use error::CliError;
use output::Writer;
use serde_json::Value;
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "fwm", version, about = "Photon-pair generation in fibers with helical gratings")]
pub struct Cli {
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `output.directory`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Table format; overrides `output.format`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Reserved: every computation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

/// Result of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub summary: Value,
    pub files: Vec<PathBuf>,
}

/// Validates the configuration named by `cli` and runs its command.
pub fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::argument("--config", "a configuration file is required"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::argument("--config", format!("cannot read {}: {e}", path.display())))?;
    let config = validate(&text).map_err(CliError::Config)?;
    if let Command::Validate = cli.command {
        return Ok(RunReport {
            summary: Value::String(config.canonical()),
            files: Vec::new(),
        });
    }
    let directory = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(&config.file.output.directory));
    let format = cli.format.unwrap_or(config.file.output.format);
    let mut writer = Writer::new(&directory, format, cli.command.name(), &config, cli.seed)?;
    let mut task = || execute(&cli.command, &config, &mut writer);
    let summary = match cli.workers {
        Some(0) => return Err(CliError::argument("--workers", "must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::argument("--workers", e))?
            .install(task)?,
        None => task()?,
    };
    Ok(RunReport {
        summary,
        files: writer.written().to_vec(),
    })
}
