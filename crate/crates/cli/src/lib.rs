//! Experiment runner: named experiments that audit the constructions and bounds of the
//! `gapgreedy` library and write CSV/JSON reports.

pub mod config;
pub mod experiments;
pub mod report;
mod sampling;
pub mod setup;

use std::time::Instant;

use thiserror::Error;

pub use config::{ConfigFile, Experiment, ExperimentConfig};
pub use report::{Report, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] gapgreedy::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Process exit codes.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    experiments::run(cfg)
}

/// Runs, writes the report files into `cfg.out` and returns the report with
/// its wall-clock time.
pub fn run_and_write(cfg: &ExperimentConfig) -> Result<(Report, f64), CliError> {
    let start = Instant::now();
    let report = run_experiment(cfg)?;
    let seconds = start.elapsed().as_secs_f64();
    report.write(&cfg.out, seconds)?;
    Ok((report, seconds))
}
