// SPDX-License-Identifier: Apache-2.0

//! Run configuration and its `key = value` file format.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use softcoul_core::crossing::{beta_grid, ScanConfig};
use softcoul_core::eigensolver::SolverConfig;
use softcoul_core::{PotentialParams, Power, StateLabel};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Scan,
    Cross,
    Audit,
    Bounds,
    Aim,
    Exact,
    Density,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Spectrum,
        Command::Scan,
        Command::Cross,
        Command::Audit,
        Command::Bounds,
        Command::Aim,
        Command::Exact,
        Command::Density,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Scan => "scan",
            Command::Cross => "cross",
            Command::Audit => "audit",
            Command::Bounds => "bounds",
            Command::Aim => "aim",
            Command::Exact => "exact",
            Command::Density => "density",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| CliError::Invalid(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::Invalid(format!("unknown format `{other}`"))),
        }
    }
}

/// A single `β` or an inclusive grid `start:end:step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BetaRange {
    Single(f64),
    Grid { start: f64, end: f64, step: f64 },
}

impl BetaRange {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        match *self {
            BetaRange::Single(b) => Ok(vec![b]),
            BetaRange::Grid { start, end, step } => Ok(beta_grid(start, end, step)?),
        }
    }

    pub fn single(&self) -> Option<f64> {
        match *self {
            BetaRange::Single(b) => Some(b),
            BetaRange::Grid { .. } => None,
        }
    }
}

impl fmt::Display for BetaRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaRange::Single(b) => write!(f, "{b}"),
            BetaRange::Grid { start, end, step } => write!(f, "{start}:{end}:{step}"),
        }
    }
}

impl FromStr for BetaRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let bad = || CliError::Invalid(format!("beta `{s}` is neither a number nor start:end:step"));
        let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
        match parts.as_slice() {
            [b] => Ok(BetaRange::Single(num(b)?)),
            [a, b, c] => {
                let range = BetaRange::Grid {
                    start: num(a)?,
                    end: num(b)?,
                    step: num(c)?,
                };
                range.values()?;
                Ok(range)
            }
            _ => Err(bad()),
        }
    }
}

/// Numerical settings that override the library defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Tolerances {
    pub n_points: Option<usize>,
    pub r_max: Option<f64>,
    pub rmax_tolerance: Option<f64>,
    pub beta_tolerance: Option<f64>,
    pub energy_tolerance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub z: f64,
    pub q: Power,
    pub beta: BetaRange,
    pub states: Vec<StateLabel>,
    pub pair: Option<(StateLabel, StateLabel)>,
    pub row: Option<u32>,
    pub ell: u32,
    pub nu_max: u32,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub tolerances: Tolerances,
}

/// Keys accepted in config files and their flag spellings.
pub const KEYS: [&str; 16] = [
    "command",
    "Z",
    "q",
    "beta",
    "states",
    "pair",
    "row",
    "ell",
    "nu_max",
    "format",
    "output",
    "n_points",
    "r_max",
    "rmax_tolerance",
    "beta_tolerance",
    "energy_tolerance",
];

impl RunConfig {
    /// Defaults for `command`: `Z = 1`, `q = 1`, state `1s`, `β = 1`, or
    /// `β = 0:100:1` for the crossing commands.
    pub fn new(command: Command) -> Self {
        let beta = match command {
            Command::Cross | Command::Audit => BetaRange::Grid {
                start: 0.0,
                end: 100.0,
                step: 1.0,
            },
            _ => BetaRange::Single(1.0),
        };
        Self {
            command,
            z: 1.0,
            q: Power::Finite(1.0),
            beta,
            states: vec![StateLabel { nu: 1, ell: 0 }],
            pair: None,
            row: None,
            ell: 0,
            nu_max: 7,
            format: OutputFormat::Csv,
            output: None,
            tolerances: Tolerances::default(),
        }
    }

    /// Builds a config from `key = value` settings; later layers win.
    pub fn from_settings(settings: &BTreeMap<String, String>) -> Result<Self, CliError> {
        for key in settings.keys() {
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Invalid(format!("unknown setting `{key}`")));
            }
        }
        let command: Command = settings
            .get("command")
            .ok_or_else(|| CliError::Invalid("no command given".into()))?
            .parse()?;
        let mut c = RunConfig::new(command);
        for (key, value) in settings {
            let v = value.trim();
            match key.as_str() {
                "command" => {}
                "Z" => c.z = number(key, v)?,
                "q" => c.q = v.parse()?,
                "beta" => c.beta = v.parse()?,
                "states" => c.states = labels(v)?,
                "pair" => {
                    let pair = labels(v)?;
                    if pair.len() != 2 {
                        return Err(CliError::Invalid(format!("pair needs two states, got `{v}`")));
                    }
                    c.pair = Some((pair[0], pair[1]));
                }
                "row" => c.row = Some(number(key, v)?),
                "ell" => c.ell = number(key, v)?,
                "nu_max" => c.nu_max = number(key, v)?,
                "format" => c.format = v.parse()?,
                "output" => c.output = Some(PathBuf::from(v)),
                "n_points" => c.tolerances.n_points = Some(number(key, v)?),
                "r_max" => c.tolerances.r_max = Some(number(key, v)?),
                "rmax_tolerance" => c.tolerances.rmax_tolerance = Some(number(key, v)?),
                "beta_tolerance" => c.tolerances.beta_tolerance = Some(number(key, v)?),
                "energy_tolerance" => c.tolerances.energy_tolerance = Some(number(key, v)?),
                _ => unreachable!("keys were checked above"),
            }
        }
        c.params_at(0.0)?;
        Ok(c)
    }

    /// Every resolved setting, in file order.
    pub fn to_settings(&self) -> Vec<(&'static str, String)> {
        let join = |ls: &[StateLabel]| ls.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let mut out = vec![
            ("command", self.command.to_string()),
            ("Z", self.z.to_string()),
            ("q", self.q.to_string()),
            ("beta", self.beta.to_string()),
            ("states", join(&self.states)),
        ];
        if let Some((a, b)) = self.pair {
            out.push(("pair", join(&[a, b])));
        }
        if let Some(row) = self.row {
            out.push(("row", row.to_string()));
        }
        out.push(("ell", self.ell.to_string()));
        out.push(("nu_max", self.nu_max.to_string()));
        out.push(("format", self.format.to_string()));
        if let Some(path) = &self.output {
            out.push(("output", path.display().to_string()));
        }
        let t = &self.tolerances;
        if let Some(n) = t.n_points {
            out.push(("n_points", n.to_string()));
        }
        for (key, value) in [
            ("r_max", t.r_max),
            ("rmax_tolerance", t.rmax_tolerance),
            ("beta_tolerance", t.beta_tolerance),
            ("energy_tolerance", t.energy_tolerance),
        ] {
            if let Some(v) = value {
                out.push((key, v.to_string()));
            }
        }
        out
    }

    pub fn to_config_string(&self) -> String {
        self.to_settings()
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }

    pub fn from_config_str(text: &str) -> Result<Self, CliError> {
        Self::from_settings(&parse_settings(text)?)
    }

    pub fn params_at(&self, beta: f64) -> Result<PotentialParams, CliError> {
        Ok(PotentialParams::new(self.z, beta, self.q)?)
    }

    pub fn solver_config(&self) -> SolverConfig {
        self.apply(SolverConfig::default())
    }

    pub fn scan_config(&self) -> ScanConfig {
        let base = ScanConfig::default();
        ScanConfig {
            solver: self.apply(base.solver.clone()),
            beta_tolerance: self.tolerances.beta_tolerance.unwrap_or(base.beta_tolerance),
            energy_tolerance: self.tolerances.energy_tolerance.unwrap_or(base.energy_tolerance),
            ..base
        }
    }

    fn apply(&self, base: SolverConfig) -> SolverConfig {
        let t = &self.tolerances;
        SolverConfig {
            n_points: t.n_points.unwrap_or(base.n_points),
            r_max: t.r_max.or(base.r_max),
            rmax_tolerance: t.rmax_tolerance.unwrap_or(base.rmax_tolerance),
            ..base
        }
    }
}

/// Parses `key = value` lines. `#` starts a comment; blank lines are
/// ignored; a repeated key keeps its last value.
pub fn parse_settings(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Invalid(format!("config line {}: expected `key = value`", n + 1)))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn number<T: FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::Invalid(format!("{key} = `{v}` is not a valid number")))
}

fn labels(v: &str) -> Result<Vec<StateLabel>, CliError> {
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse().map_err(CliError::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn file_format() {
        let text = "# scan\ncommand = scan\nZ = 2  # charge\nbeta = 0:10:0.5\nstates = 1s, 2p\n\n";
        let c = RunConfig::from_config_str(text).unwrap();
        assert_eq!(c.command, Command::Scan);
        assert_eq!(c.z, 2.0);
        assert_eq!(c.beta.values().unwrap().len(), 21);
        assert_eq!(c.states.len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "command = spectrum\nbogus = 1",
            "command = spectrum\nZ = -1",
            "command = spectrum\nstates = 1p",
            "command = nope",
            "Z = 1",
            "command = cross\npair = 1s",
            "command = scan\nbeta = 5:1:1",
            "command = spectrum\njunk",
        ] {
            assert!(matches!(RunConfig::from_config_str(text), Err(CliError::Invalid(_))), "{text}");
        }
    }

    fn label() -> impl Strategy<Value = StateLabel> {
        (1u32..9).prop_flat_map(|nu| (Just(nu), 0..nu)).prop_map(|(nu, ell)| StateLabel { nu, ell })
    }

    fn config() -> impl Strategy<Value = RunConfig> {
        let beta = prop_oneof![
            (0.0f64..1e3).prop_map(BetaRange::Single),
            (0.0f64..50.0, 0.0f64..50.0, 0.01f64..5.0).prop_map(|(s, w, step)| BetaRange::Grid {
                start: s,
                end: s + w,
                step
            }),
        ];
        let q = prop_oneof![(1.0f64..10.0).prop_map(Power::Finite), Just(Power::Infinite)];
        (
            (0usize..8, 1e-3f64..1e3, q, beta, proptest::collection::vec(label(), 1..5)),
            (
                proptest::option::of((label(), label())),
                proptest::option::of(2u32..10),
                0u32..5,
                1u32..9,
                any::<bool>(),
                proptest::option::of("[a-z]{1,8}\\.(csv|json)"),
            ),
            (
                proptest::option::of(100usize..100_000),
                proptest::option::of(1.0f64..1e4),
                proptest::option::of(1e-14f64..1e-2),
                proptest::option::of(1e-12f64..1e-3),
                proptest::option::of(1e-14f64..1e-4),
            ),
        )
            .prop_map(|((cmd, z, q, beta, states), (pair, row, ell, nu_max, json, output), tol)| RunConfig {
                command: Command::ALL[cmd],
                z,
                q,
                beta,
                states,
                pair,
                row,
                ell,
                nu_max,
                format: if json { OutputFormat::Json } else { OutputFormat::Csv },
                output: output.map(PathBuf::from),
                tolerances: Tolerances {
                    n_points: tol.0,
                    r_max: tol.1,
                    rmax_tolerance: tol.2,
                    beta_tolerance: tol.3,
                    energy_tolerance: tol.4,
                },
            })
    }

    proptest! {
        #[test]
        fn round_trips_through_the_file_format(c in config()) {
            let text = c.to_config_string();
            prop_assert_eq!(RunConfig::from_config_str(&text).unwrap(), c);
        }
    }
}
