//! Command-line front end: reads a run config, applies Schlesinger steps and
//! discrete Painleve maps, runs the invariant suites and writes traces.

pub mod commands;
pub mod config;
pub mod error;
pub mod random;
pub mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
pub use fuchsian_core::C64;

pub use commands::{Outcome, Settings};
pub use config::{Format, Mode, RunConfig};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "schlesinger",
    version,
    about = "Schlesinger transformations, discrete Painleve orbits and their checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// JSON run config.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random instances per suite in verify.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Tolerance for every inexact check in verify.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run the invariant suite of the mode; exit 0 iff every check passes.
    Verify,
    /// Apply one transformation and print both sides.
    Step,
    /// Iterate and write a trace.
    Orbit,
}

impl Cli {
    pub fn settings(&self) -> Result<Settings, CliError> {
        let config = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let mode = self.mode.or_else(|| commands::infer_mode(&config));
        if let Some(mode) = mode {
            config.check_consistent(mode)?;
        }
        if let Some(t) = self.tol.or(config.tolerances.check) {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::Usage(format!("tolerance {t} is not a nonnegative number")));
            }
        }
        Ok(Settings {
            mode,
            seed: self.seed.or(config.seed).unwrap_or(0),
            steps: self.steps.or(config.steps),
            trials: self.trials.or(config.trials),
            tol: config.tolerances(),
            check_tol: self.tol.or(config.tolerances.check),
            format: self.format.or(config.output.format).unwrap_or_default(),
            config,
        })
    }

    /// Where output goes: the flag, then the config, else stdout.
    pub fn out_path(&self, settings: Option<&Settings>) -> Option<PathBuf> {
        self.out
            .clone()
            .or_else(|| settings.and_then(|s| s.config.output.path.clone()))
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let settings = match cli.settings() {
        Ok(s) => s,
        Err(e) => {
            return Outcome {
                output: String::new(),
                error: Some(e),
            }
        }
    };
    match cli.command {
        Command::Verify => commands::verify(&settings),
        Command::Step => commands::step(&settings),
        Command::Orbit => commands::orbit(&settings),
    }
}
