// SPDX-License-Identifier: Apache-2.0

//! Command-line driver for `softcoul-core`: run configuration, the
//! `key = value` config file, deterministic CSV/JSON output and a small
//! thread fan-out.
//!
//! Exit codes: `0` success, `1` I/O failure, `2` invalid input, `3`
//! numerical failure.

pub mod commands;
pub mod config;
pub mod parallel;
pub mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};

pub use config::{BetaRange, Command, OutputFormat, RunConfig, Tolerances};
pub use report::{format_float, Cell, Report};

use softcoul_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    fn context(self, what: &str) -> Self {
        match self {
            CliError::Invalid(m) => CliError::Invalid(format!("{what}: {m}")),
            CliError::Numerical(m) => CliError::Numerical(format!("{what}: {m}")),
            other => other,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::InvalidState(..)
            | Error::IndexOutOfRange { .. }
            | Error::UnsupportedRow(_)
            | Error::UnsupportedBasis(_)
            | Error::CoulombCusp => CliError::Invalid(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

/// Runs `config` and writes its artifact to `--output` or stdout. Notes go
/// to stderr.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let report = commands::execute(config)?;
    match &config.output {
        Some(path) => write_report(config, &report, BufWriter::new(File::create(path)?))?,
        None => write_report(config, &report, io::stdout().lock())?,
    }
    let mut err = io::stderr().lock();
    for note in &report.notes {
        writeln!(err, "note: {note}")?;
    }
    Ok(report)
}

pub fn write_report<W: Write>(config: &RunConfig, report: &Report, out: W) -> Result<(), CliError> {
    match config.format {
        OutputFormat::Csv => report.write_csv(out),
        OutputFormat::Json => report.write_json(config, out),
    }
}

/// The artifact `run` would write, as a string.
pub fn render(config: &RunConfig) -> Result<String, CliError> {
    let report = commands::execute(config)?;
    let mut buf = Vec::new();
    write_report(config, &report, &mut buf)?;
    Ok(String::from_utf8(buf).expect("writers emit UTF-8"))
}
