// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use softcoul::config::parse_settings;
use softcoul::{CliError, RunConfig};

/// Spectra, bounds and level crossings of V(r) = -Z/(r^q + beta^q)^(1/q).
#[derive(Debug, Parser)]
#[command(name = "softcoul", version)]
struct Cli {
    /// spectrum | scan | cross | audit | bounds | aim | exact | density
    command: Option<String>,
    /// Nuclear charge.
    #[arg(long = "Z")]
    z: Option<String>,
    /// Softening length, or a grid start:end:step.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Power q (a number or `inf`).
    #[arg(long)]
    q: Option<String>,
    /// Comma-separated state labels, e.g. 1s,2p.
    #[arg(long)]
    states: Option<String>,
    /// Two state labels for `cross`, e.g. 6s,7f.
    #[arg(long)]
    pair: Option<String>,
    /// Exact-solution table row k (2..=9) for `exact`.
    #[arg(long)]
    row: Option<String>,
    /// Angular momentum for `aim` and `exact`.
    #[arg(long)]
    ell: Option<String>,
    /// Largest principal number in `audit`.
    #[arg(long = "nu-max")]
    nu_max: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Output file (stdout if absent).
    #[arg(long)]
    output: Option<String>,
    /// key = value config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "n-points")]
    n_points: Option<String>,
    #[arg(long = "r-max")]
    r_max: Option<String>,
    #[arg(long = "rmax-tolerance")]
    rmax_tolerance: Option<String>,
    #[arg(long = "beta-tolerance")]
    beta_tolerance: Option<String>,
    #[arg(long = "energy-tolerance")]
    energy_tolerance: Option<String>,
}

impl Cli {
    fn settings(self) -> Result<BTreeMap<String, String>, CliError> {
        let mut map = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
                parse_settings(&text)?
            }
            None => BTreeMap::new(),
        };
        let flags = [
            ("command", self.command),
            ("Z", self.z),
            ("beta", self.beta),
            ("q", self.q),
            ("states", self.states),
            ("pair", self.pair),
            ("row", self.row),
            ("ell", self.ell),
            ("nu_max", self.nu_max),
            ("format", self.format),
            ("output", self.output),
            ("n_points", self.n_points),
            ("r_max", self.r_max),
            ("rmax_tolerance", self.rmax_tolerance),
            ("beta_tolerance", self.beta_tolerance),
            ("energy_tolerance", self.energy_tolerance),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                map.insert(key.to_string(), v);
            }
        }
        Ok(map)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli
        .settings()
        .and_then(|s| RunConfig::from_settings(&s))
        .and_then(|config| softcoul::run(&config));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("softcoul: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
