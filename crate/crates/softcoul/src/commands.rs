// SPDX-License-Identifier: Apache-2.0

//! One function per command, each returning a [`Report`].

use softcoul_core::aim::{aim_solve, default_bracket, AimConfig};
use softcoul_core::crossing::{audit_table, labels_up_to, scan_row, CrossingRecord, LevelTable, PairScan};
use softcoul_core::density::{concavity_check, scaled_density, solve_for_density};
use softcoul_core::eigensolver::RadialSolver;
use softcoul_core::envelope::envelope_bound;
use softcoul_core::exact::{exact_case, exact_wavefunction};
use softcoul_core::{Error, Power, StateLabel};

use crate::config::{Command, RunConfig};
use crate::parallel;
use crate::report::{Cell, Report};
use crate::CliError;

pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    match config.command {
        Command::Spectrum => spectrum(config),
        Command::Scan => scan(config),
        Command::Cross => cross(config),
        Command::Audit => audit(config),
        Command::Bounds => bounds(config),
        Command::Aim => aim(config),
        Command::Exact => exact(config),
        Command::Density => density(config),
    }
}

fn single_beta(config: &RunConfig) -> Result<f64, CliError> {
    config
        .beta
        .single()
        .ok_or_else(|| CliError::Invalid(format!("`{}` needs a single beta value", config.command)))
}

fn context(label: StateLabel, beta: f64, e: Error) -> CliError {
    CliError::from(e).context(&format!("{label} at beta={beta}"))
}

fn spectrum(config: &RunConfig) -> Result<Report, CliError> {
    let solver = RadialSolver::new(config.solver_config())?;
    let betas = config.beta.values()?;
    let params: Vec<_> = betas.iter().map(|&b| config.params_at(b)).collect::<Result<_, _>>()?;
    let results = parallel::map(&params, parallel::worker_count(), |p| {
        solver.solve_states(p, &config.states)
    });
    let mut report = Report::new(&["Z", "beta", "q", "state", "nu", "ell", "energy", "error_estimate", "nodes"]);
    for (beta, row) in betas.iter().zip(results) {
        for (label, result) in config.states.iter().zip(row) {
            let pair = result.map_err(|e| context(*label, *beta, e))?;
            report.push(vec![
                config.z.into(),
                (*beta).into(),
                config.q.value().into(),
                label.to_string().into(),
                label.nu.into(),
                label.ell.into(),
                pair.energy.into(),
                pair.error_estimate.into(),
                pair.node_count.into(),
            ]);
        }
    }
    Ok(report)
}

/// Level table for the crossing commands, one worker per block of `β`.
fn level_table(config: &RunConfig, labels: &[StateLabel]) -> Result<LevelTable, CliError> {
    let scan = config.scan_config();
    let solver = RadialSolver::new(scan.solver.clone())?;
    let family = config.params_at(0.0)?;
    let betas = config.beta.values()?;
    let rows = parallel::map(&betas, parallel::worker_count(), |&b| scan_row(&solver, &family, labels, b));
    Ok(LevelTable::from_rows(family, labels.to_vec(), betas, rows)?)
}

fn scan(config: &RunConfig) -> Result<Report, CliError> {
    let table = level_table(config, &config.states)?;
    let mut report = Report::new(&["beta", "state", "energy"]);
    for (beta, row) in table.betas().iter().zip(table.rows()) {
        for (label, level) in table.labels().iter().zip(row) {
            report.push(vec![(*beta).into(), label.to_string().into(), level.energy().into()]);
        }
    }
    for (label, beta) in table.gaps() {
        report.notes.push(format!("solver failed for {label} at beta={beta}"));
    }
    for (label, beta) in table.non_monotone() {
        report.notes.push(format!("{label} does not rise at beta={beta}"));
    }
    Ok(report)
}

const CROSSING_COLUMNS: [&str; 7] = ["state_a", "state_b", "beta_star", "beta_lo", "beta_hi", "residual", "rule_compliant"];

fn crossing_row(c: &CrossingRecord) -> Vec<Cell> {
    vec![
        c.state_a.to_string().into(),
        c.state_b.to_string().into(),
        c.beta_star.into(),
        c.bracket.0.into(),
        c.bracket.1.into(),
        c.residual.into(),
        c.rule_compliant.into(),
    ]
}

fn pair_notes(scan: &PairScan, notes: &mut Vec<String>) {
    for n in &scan.near_degeneracies {
        notes.push(format!(
            "near-degeneracy {}-{} at beta={} gap={}",
            n.state_a, n.state_b, n.beta, n.gap
        ));
    }
    if scan.incomplete {
        notes.push(format!("scan of {}-{} is incomplete", scan.state_a, scan.state_b));
    }
}

fn cross(config: &RunConfig) -> Result<Report, CliError> {
    let (a, b) = config
        .pair
        .ok_or_else(|| CliError::Invalid("`cross` needs --pair".into()))?;
    let table = level_table(config, &[a, b])?;
    let scan = table.pair_crossings(a, b, &config.scan_config())?;
    let mut report = Report::new(&CROSSING_COLUMNS);
    for c in &scan.crossings {
        report.push(crossing_row(c));
    }
    pair_notes(&scan, &mut report.notes);
    Ok(report)
}

fn audit(config: &RunConfig) -> Result<Report, CliError> {
    if !(1..=8).contains(&config.nu_max) {
        return Err(CliError::Invalid(format!("nu_max must be in 1..=8, got {}", config.nu_max)));
    }
    let table = level_table(config, &labels_up_to(config.nu_max))?;
    let audit = audit_table(&table, &config.scan_config())?;
    let mut report = Report::new(&CROSSING_COLUMNS);
    for c in audit.crossings() {
        report.push(crossing_row(c));
    }
    let notes = &mut report.notes;
    notes.push(format!(
        "pairs: {} crossed, {} not crossed",
        audit.crossed_pairs().count(),
        audit.uncrossed_pairs().count()
    ));
    for c in audit.counterexamples() {
        notes.push(format!("counterexample: {}-{} cross at beta={}", c.state_a, c.state_b, c.beta_star));
    }
    notes.push(format!("counterexamples: {}", audit.counterexamples().len()));
    notes.push(format!(
        "rule-allowed pairs without a crossing: {}",
        audit.rule_pairs_without_crossing().len()
    ));
    notes.push(format!(
        "ordering checks: {}, violations: {}",
        audit.ordering.len(),
        audit.ordering_violations().count()
    ));
    for v in audit.ordering_violations() {
        notes.push(format!(
            "ordering violation: {} not below {} at beta={}",
            v.state, v.crossing.state_a, v.crossing.beta_star
        ));
    }
    for p in &audit.pairs {
        pair_notes(p, notes);
    }
    for (label, beta) in &audit.non_monotone {
        notes.push(format!("{label} does not rise at beta={beta}"));
    }
    Ok(report)
}

fn bounds(config: &RunConfig) -> Result<Report, CliError> {
    let beta = single_beta(config)?;
    let params = config.params_at(beta)?;
    let mut report = Report::new(&["state", "lower", "upper", "upper_valid", "r_hat"]);
    for &label in &config.states {
        let lower = envelope_bound(&params, label, -1).map_err(|e| context(label, beta, e))?;
        let upper = envelope_bound(&params, label, 2).map_err(|e| context(label, beta, e))?;
        report.push(vec![
            label.to_string().into(),
            lower.value.into(),
            upper.value.into(),
            upper.valid.into(),
            upper.r_hat.into(),
        ]);
    }
    Ok(report)
}

fn aim(config: &RunConfig) -> Result<Report, CliError> {
    let beta = single_beta(config)?;
    let params = config.params_at(beta)?;
    let roots = aim_solve(&params, config.ell, default_bracket(&params), &AimConfig::default())?;
    let mut report = Report::new(&["Z", "beta", "ell", "index", "energy"]);
    for (i, root) in roots.iter().enumerate() {
        report.push(vec![config.z.into(), beta.into(), config.ell.into(), i.into(), root.energy.into()]);
    }
    Ok(report)
}

fn exact(config: &RunConfig) -> Result<Report, CliError> {
    if config.q != Power::Finite(1.0) {
        return Err(CliError::Invalid("`exact` covers q = 1 only".into()));
    }
    let row = config
        .row
        .ok_or_else(|| CliError::Invalid("`exact` needs --row".into()))?;
    let case = exact_case(row, config.ell, config.z)?;
    let mut report = Report::new(&["row", "ell", "Z", "beta", "energy", "nodes"]);
    for &beta in &case.betas {
        let wf = exact_wavefunction(&case, beta)?;
        report.push(vec![
            row.into(),
            config.ell.into(),
            config.z.into(),
            beta.into(),
            case.energy.into(),
            wf.nodes.len().into(),
        ]);
    }
    Ok(report)
}

fn density(config: &RunConfig) -> Result<Report, CliError> {
    let beta = single_beta(config)?;
    let params = config.params_at(beta)?;
    let base = config.solver_config();
    let results = parallel::map(&config.states, parallel::worker_count(), |&label| {
        let pair = solve_for_density(&params, label, &base)?;
        let profile = scaled_density(&pair)?;
        let check = match concavity_check(&pair) {
            Ok(c) => Some(c),
            Err(Error::CoulombCusp) => None,
            Err(e) => return Err(e),
        };
        Ok((profile, check))
    });
    let mut report = Report::new(&["state", "eta0", "eta1", "eta2", "predicted_ratio", "concave"]);
    for (&label, result) in config.states.iter().zip(results) {
        let (profile, check) = result.map_err(|e| context(label, beta, e))?;
        report.push(vec![
            label.to_string().into(),
            profile.eta0.into(),
            profile.eta1.into(),
            profile.eta2.into(),
            check.map(|c| c.predicted_ratio).into(),
            check.map_or(Cell::Empty, |c| c.concave.into()),
        ]);
    }
    if beta == 0.0 {
        report
            .notes
            .push("beta = 0 is the Coulomb cusp; no curvature prediction".into());
    }
    Ok(report)
}
