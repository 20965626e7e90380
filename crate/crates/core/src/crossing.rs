// SPDX-License-Identifier: Apache-2.0

//! Level crossings of `E_{νℓ}(β)` curves and the crossing-rule audit.
//!
//! Curves are tracked by label (the block index inside each `ℓ` block), so
//! they stay continuous through crossings. A crossing is a sign change of
//! `ΔE = E_a − E_b` between two samples; it is bisected on a frozen grid so
//! every evaluation in one bracket sees the same discretization. Local
//! dips of `|ΔE|` that do not change sign are refined and, if they come
//! close to zero, reported as near-degeneracies.

use alloc::format;
use alloc::vec::Vec;

use crate::eigensolver::{RadialSolver, SolverConfig};
use crate::model::{PotentialParams, Power, StateLabel};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    /// Solver used at every sample. Bisection pins its `r_max`.
    pub solver: SolverConfig,
    pub beta_tolerance: f64,
    pub energy_tolerance: f64,
    pub max_bisections: u32,
    /// Smallest gap that still counts as a clean miss rather than a
    /// near-degeneracy.
    pub tangency_tolerance: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig {
                n_points: 4000,
                ..SolverConfig::energies_only()
            },
            beta_tolerance: 1e-6,
            energy_tolerance: 1e-8,
            max_bisections: 200,
            tangency_tolerance: 1e-7,
        }
    }
}

/// `start, start + step, …` up to and including `end`.
pub fn beta_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(start >= 0.0 && end >= start && step > 0.0 && end.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "bad grid {start}:{end}:{step}"
        )));
    }
    let count = libm::floor((end - start) / step + 1e-9) as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// All labels with `1 ≤ ν ≤ nu_max`, ordered by `ν` then `ℓ`.
pub fn labels_up_to(nu_max: u32) -> Vec<StateLabel> {
    (1..=nu_max)
        .flat_map(|nu| (0..nu).map(move |ell| StateLabel { nu, ell }))
        .collect()
}

/// The crossing rule `ν_b ≥ ν_a + 1` and `ℓ_b ≥ ℓ_a + 3`, after ordering
/// the pair so that `b` has the larger `ν`.
pub fn crossing_rule(a: StateLabel, b: StateLabel) -> bool {
    let (a, b) = ordered(a, b);
    b.nu > a.nu && b.ell >= a.ell + 3
}

fn ordered(a: StateLabel, b: StateLabel) -> (StateLabel, StateLabel) {
    if (b.nu, b.ell) < (a.nu, a.ell) {
        (b, a)
    } else {
        (a, b)
    }
}

/// One label at one parameter point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Level {
    /// Converged energy and the domain radius it converged on.
    Bound { energy: f64, r_max: f64 },
    Unbound,
    /// The solver failed; the point is a gap in the curve.
    Failed,
}

impl Level {
    pub fn energy(&self) -> Option<f64> {
        match *self {
            Level::Bound { energy, .. } => Some(energy),
            _ => None,
        }
    }

    fn r_max(&self) -> Option<f64> {
        match *self {
            Level::Bound { r_max, .. } => Some(r_max),
            _ => None,
        }
    }
}

/// Solves `labels` for one potential.
pub fn solve_row(solver: &RadialSolver, params: &PotentialParams, labels: &[StateLabel]) -> Vec<Level> {
    solver
        .solve_states(params, labels)
        .into_iter()
        .map(|r| match r {
            Ok(pair) if pair.energy < 0.0 => Level::Bound {
                energy: pair.energy,
                r_max: pair.grid.r_max(),
            },
            Ok(_) | Err(Error::Unbound { .. }) => Level::Unbound,
            Err(_) => Level::Failed,
        })
        .collect()
}

/// Solves `labels` for `family` with `β` replaced.
pub fn scan_row(solver: &RadialSolver, family: &PotentialParams, labels: &[StateLabel], beta: f64) -> Vec<Level> {
    match family.with_beta(beta) {
        Ok(params) => solve_row(solver, &params, labels),
        Err(_) => labels.iter().map(|_| Level::Failed).collect(),
    }
}

/// Energies of a set of labels over a `β` grid for fixed `Z` and `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelTable {
    family: PotentialParams,
    labels: Vec<StateLabel>,
    betas: Vec<f64>,
    rows: Vec<Vec<Level>>,
}

impl LevelTable {
    /// Assembles a table from rows computed elsewhere, one row per `β`.
    pub fn from_rows(
        family: PotentialParams,
        labels: Vec<StateLabel>,
        betas: Vec<f64>,
        rows: Vec<Vec<Level>>,
    ) -> Result<Self> {
        if rows.len() != betas.len() || rows.iter().any(|r| r.len() != labels.len()) {
            return Err(Error::InvalidParameter("table rows do not match the grid".into()));
        }
        if betas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("beta grid must increase".into()));
        }
        Ok(Self {
            family,
            labels,
            betas,
            rows,
        })
    }

    pub fn family(&self) -> &PotentialParams {
        &self.family
    }

    pub fn labels(&self) -> &[StateLabel] {
        &self.labels
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn rows(&self) -> &[Vec<Level>] {
        &self.rows
    }

    pub fn level(&self, beta_index: usize, label: StateLabel) -> Option<Level> {
        let j = self.labels.iter().position(|&l| l == label)?;
        self.rows.get(beta_index).map(|row| row[j])
    }

    /// `E(β)` samples of one label, `None` where it is missing.
    pub fn curve(&self, label: StateLabel) -> Option<Vec<Option<f64>>> {
        let j = self.labels.iter().position(|&l| l == label)?;
        Some(self.rows.iter().map(|row| row[j].energy()).collect())
    }

    /// `(label, β)` wherever a curve fails to rise from the previous
    /// bound sample.
    pub fn non_monotone(&self) -> Vec<(StateLabel, f64)> {
        let mut out = Vec::new();
        for (j, &label) in self.labels.iter().enumerate() {
            let mut last: Option<f64> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if let Some(e) = row[j].energy() {
                    if last.is_some_and(|prev| e <= prev) {
                        out.push((label, self.betas[i]));
                    }
                    last = Some(e);
                }
            }
        }
        out
    }

    /// `(label, β)` wherever the solver failed.
    pub fn gaps(&self) -> Vec<(StateLabel, f64)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, level) in row.iter().enumerate() {
                if *level == Level::Failed {
                    out.push((self.labels[j], self.betas[i]));
                }
            }
        }
        out
    }

    /// Crossings and near-degeneracies of one pair of tabulated labels.
    ///
    /// A curve ends at its first unbound sample; solver gaps split the scan
    /// and mark the result incomplete.
    pub fn pair_crossings(&self, a: StateLabel, b: StateLabel, config: &ScanConfig) -> Result<PairScan> {
        let (a, b) = ordered(a, b);
        let missing = |l: StateLabel| Error::InvalidParameter(format!("{l} is not in the table"));
        let ja = self.labels.iter().position(|&l| l == a).ok_or_else(|| missing(a))?;
        let jb = self.labels.iter().position(|&l| l == b).ok_or_else(|| missing(b))?;
        let mut scan = PairScan {
            state_a: a,
            state_b: b,
            crossings: Vec::new(),
            near_degeneracies: Vec::new(),
            incomplete: false,
        };

        // Runs of consecutive samples where both states are bound.
        let mut runs: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let (la, lb) = (row[ja], row[jb]);
            if la == Level::Unbound || lb == Level::Unbound {
                break;
            }
            if la == Level::Failed || lb == Level::Failed {
                scan.incomplete = true;
                runs.push(core::mem::take(&mut current));
                continue;
            }
            current.push(i);
        }
        runs.push(current);

        let delta = |i: usize| {
            let row = &self.rows[i];
            row[ja].energy().unwrap_or(f64::NAN) - row[jb].energy().unwrap_or(f64::NAN)
        };
        let r_max = |i: usize| {
            let row = &self.rows[i];
            row[ja].r_max().unwrap_or(0.0).max(row[jb].r_max().unwrap_or(0.0))
        };
        let frozen = |indices: &[usize]| {
            let radius = indices.iter().map(|&i| r_max(i)).fold(0.0, f64::max);
            FrozenPair::new(&self.family, a, b, radius, config)
        };

        for run in runs.iter().filter(|r| r.len() >= 2) {
            for w in run.windows(2) {
                let (i, k) = (w[0], w[1]);
                let (d0, d1) = (delta(i), delta(k));
                if d0 != 0.0 && (d0 < 0.0) != (d1 < 0.0) || d1 == 0.0 && d0 != 0.0 {
                    let pair = frozen(&[i, k])?;
                    match pair.bisect(self.betas[i], self.betas[k], config) {
                        Some(record) => scan.crossings.push(record),
                        None => scan.incomplete = true,
                    }
                }
            }
            for w in run.windows(3) {
                let (i, j, k) = (w[0], w[1], w[2]);
                let (y0, y1, y2) = (delta(i), delta(j), delta(k));
                let s = if y1 < 0.0 { -1.0 } else { 1.0 };
                let (y0, y1, y2) = (s * y0, s * y1, s * y2);
                if !(y0 > 0.0 && y1 > 0.0 && y2 > 0.0 && y1 < y0 && y1 <= y2) {
                    continue;
                }
                if !dip_worth_refining(self.betas[i], self.betas[j], self.betas[k], y0, y1, y2, config) {
                    continue;
                }
                let pair = frozen(&[i, j, k])?;
                match pair.refine_dip(self.betas[i], self.betas[k], s, config) {
                    Dip::Crossings(records) => scan.crossings.extend(records),
                    Dip::Near(event) => scan.near_degeneracies.push(event),
                    Dip::Clear => {}
                    Dip::Failed => scan.incomplete = true,
                }
            }
        }
        scan.crossings.sort_by(|x, y| x.beta_star.total_cmp(&y.beta_star));
        Ok(scan)
    }
}

/// Whether three samples of `s·ΔE` dip deep enough to hide a tangency or a
/// pair of crossings between them: the interpolating parabola nearly
/// reaches zero, or the dip is deeper than the middle value.
fn dip_worth_refining(x0: f64, x1: f64, x2: f64, y0: f64, y1: f64, y2: f64, config: &ScanConfig) -> bool {
    let s0 = (y1 - y0) / (x1 - x0);
    let s1 = (y2 - y1) / (x2 - x1);
    let c = (s1 - s0) / (x2 - x0);
    if !(c > 0.0) {
        return false;
    }
    let slope_mid = s0 + c * (x1 - x0);
    let vertex = y1 - slope_mid * slope_mid / (4.0 * c);
    let depth = y0.min(y2) - y1;
    vertex < 0.5 * y1 || depth > y1 || y1 < 100.0 * config.tangency_tolerance
}

/// Build the table of `labels` over `betas`, one sample at a time.
pub fn scan_levels(
    family: &PotentialParams,
    labels: &[StateLabel],
    betas: &[f64],
    config: &ScanConfig,
) -> Result<LevelTable> {
    let solver = RadialSolver::new(config.solver.clone())?;
    let rows = betas.iter().map(|&beta| scan_row(&solver, family, labels, beta)).collect();
    LevelTable::from_rows(*family, labels.to_vec(), betas.to_vec(), rows)
}

/// A located crossing `E_a(β*) = E_b(β*)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossingRecord {
    pub state_a: StateLabel,
    pub state_b: StateLabel,
    pub beta_star: f64,
    /// The coarse-scan samples whose `ΔE` differ in sign.
    pub bracket: (f64, f64),
    /// `|E_a − E_b|` at `β*`.
    pub residual: f64,
    pub rule_compliant: bool,
}

/// `|ΔE|` comes within the tangency tolerance of zero without a sign change.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NearDegeneracy {
    pub state_a: StateLabel,
    pub state_b: StateLabel,
    pub beta: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairScan {
    pub state_a: StateLabel,
    pub state_b: StateLabel,
    pub crossings: Vec<CrossingRecord>,
    pub near_degeneracies: Vec<NearDegeneracy>,
    /// A gap in either curve or a bracket that could not be resolved.
    pub incomplete: bool,
}

/// Pairwise crossings of `pair` for `β` on `betas`.
pub fn find_crossing(
    family: &PotentialParams,
    pair: (StateLabel, StateLabel),
    betas: &[f64],
    config: &ScanConfig,
) -> Result<PairScan> {
    let table = scan_levels(family, &[pair.0, pair.1], betas, config)?;
    table.pair_crossings(pair.0, pair.1, config)
}

enum Dip {
    Crossings(Vec<CrossingRecord>),
    Near(NearDegeneracy),
    Clear,
    Failed,
}

/// `ΔE(β)` on one fixed grid.
struct FrozenPair<'a> {
    family: &'a PotentialParams,
    a: StateLabel,
    b: StateLabel,
    solver: RadialSolver,
}

impl<'a> FrozenPair<'a> {
    fn new(family: &'a PotentialParams, a: StateLabel, b: StateLabel, r_max: f64, config: &ScanConfig) -> Result<Self> {
        let solver = RadialSolver::new(SolverConfig {
            r_max: Some(r_max),
            max_doublings: 0,
            rmax_tolerance: f64::INFINITY,
            with_wavefunction: false,
            ..config.solver.clone()
        })?;
        Ok(Self { family, a, b, solver })
    }

    fn delta(&self, beta: f64) -> Option<f64> {
        let row = scan_row(&self.solver, self.family, &[self.a, self.b], beta);
        Some(row[0].energy()? - row[1].energy()?)
    }

    fn record(&self, beta_star: f64, bracket: (f64, f64), residual: f64) -> CrossingRecord {
        CrossingRecord {
            state_a: self.a,
            state_b: self.b,
            beta_star,
            bracket,
            residual,
            rule_compliant: crossing_rule(self.a, self.b),
        }
    }

    fn bisect(&self, lo: f64, hi: f64, config: &ScanConfig) -> Option<CrossingRecord> {
        let d_lo = self.delta(lo)?;
        let d_hi = self.delta(hi)?;
        self.bisect_from(lo, hi, d_lo, d_hi, (lo, hi), config)
    }

    fn bisect_from(
        &self,
        mut lo: f64,
        mut hi: f64,
        mut d_lo: f64,
        d_hi: f64,
        bracket: (f64, f64),
        config: &ScanConfig,
    ) -> Option<CrossingRecord> {
        if d_lo == 0.0 {
            return Some(self.record(lo, bracket, 0.0));
        }
        if d_hi == 0.0 {
            return Some(self.record(hi, bracket, 0.0));
        }
        if (d_lo < 0.0) == (d_hi < 0.0) {
            return None;
        }
        let mut best = (0.5 * (lo + hi), f64::INFINITY);
        for _ in 0..config.max_bisections {
            let mid = 0.5 * (lo + hi);
            let d_mid = self.delta(mid)?;
            best = (mid, d_mid.abs());
            if (hi - lo < config.beta_tolerance && d_mid.abs() < config.energy_tolerance) || d_mid == 0.0 {
                break;
            }
            if mid <= lo || mid >= hi {
                break;
            }
            if (d_mid < 0.0) == (d_lo < 0.0) {
                lo = mid;
                d_lo = d_mid;
            } else {
                hi = mid;
            }
        }
        Some(self.record(best.0, bracket, best.1))
    }

    /// Golden-section search for the minimum of `s·ΔE` over `[lo, hi]`.
    fn refine_dip(&self, lo: f64, hi: f64, s: f64, config: &ScanConfig) -> Dip {
        const GOLDEN: f64 = 0.381_966_011_250_105_1;
        let f = |x: f64| self.delta(x).map(|d| s * d);
        let (mut a, mut b) = (lo, hi);
        let mut x1 = a + GOLDEN * (b - a);
        let mut x2 = b - GOLDEN * (b - a);
        let (Some(mut f1), Some(mut f2)) = (f(x1), f(x2)) else {
            return Dip::Failed;
        };
        loop {
            let (x, fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
            if fx <= 0.0 {
                return self.split_dip(lo, x, hi, config);
            }
            if b - a < config.beta_tolerance {
                if fx < config.tangency_tolerance {
                    return Dip::Near(NearDegeneracy {
                        state_a: self.a,
                        state_b: self.b,
                        beta: x,
                        gap: fx,
                    });
                }
                return Dip::Clear;
            }
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = a + GOLDEN * (b - a);
                match f(x1) {
                    Some(v) => f1 = v,
                    None => return Dip::Failed,
                }
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = b - GOLDEN * (b - a);
                match f(x2) {
                    Some(v) => f2 = v,
                    None => return Dip::Failed,
                }
            }
        }
    }

    /// Two sign changes around an interior point where `ΔE` flipped.
    fn split_dip(&self, lo: f64, x: f64, hi: f64, config: &ScanConfig) -> Dip {
        let (Some(d_lo), Some(d_x), Some(d_hi)) = (self.delta(lo), self.delta(x), self.delta(hi)) else {
            return Dip::Failed;
        };
        let left = self.bisect_from(lo, x, d_lo, d_x, (lo, hi), config);
        let right = self.bisect_from(x, hi, d_x, d_hi, (lo, hi), config);
        match (left, right) {
            (Some(l), Some(r)) if l.beta_star != r.beta_star => Dip::Crossings(alloc::vec![l, r]),
            (Some(l), _) | (_, Some(l)) => Dip::Crossings(alloc::vec![l]),
            _ => Dip::Failed,
        }
    }
}

/// The `(ν, ℓ)`–`(ν+1, ℓ+3)` ordering claim checked at one crossing:
/// `state` should already lie below `crossing.state_a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderingCheck {
    pub crossing: CrossingRecord,
    pub state: StateLabel,
    pub energy: Option<f64>,
    pub reference_energy: Option<f64>,
    pub below: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub family: PotentialParams,
    pub nu_max: u32,
    pub pairs: Vec<PairScan>,
    pub ordering: Vec<OrderingCheck>,
    pub non_monotone: Vec<(StateLabel, f64)>,
}

impl AuditReport {
    pub fn crossings(&self) -> impl Iterator<Item = &CrossingRecord> {
        self.pairs.iter().flat_map(|p| p.crossings.iter())
    }

    /// Crossings that break the rule.
    pub fn counterexamples(&self) -> Vec<CrossingRecord> {
        self.crossings().filter(|c| !c.rule_compliant).copied().collect()
    }

    pub fn crossed_pairs(&self) -> impl Iterator<Item = &PairScan> {
        self.pairs.iter().filter(|p| !p.crossings.is_empty())
    }

    pub fn uncrossed_pairs(&self) -> impl Iterator<Item = &PairScan> {
        self.pairs.iter().filter(|p| p.crossings.is_empty())
    }

    /// Pairs allowed by the rule that never cross in the scanned range.
    pub fn rule_pairs_without_crossing(&self) -> Vec<(StateLabel, StateLabel)> {
        self.uncrossed_pairs()
            .filter(|p| crossing_rule(p.state_a, p.state_b))
            .map(|p| (p.state_a, p.state_b))
            .collect()
    }

    pub fn incomplete_pairs(&self) -> impl Iterator<Item = &PairScan> {
        self.pairs.iter().filter(|p| p.incomplete)
    }

    pub fn ordering_violations(&self) -> impl Iterator<Item = &OrderingCheck> {
        self.ordering.iter().filter(|c| !c.below)
    }
}

/// Scans every label up to `nu_max` and audits all pairs with `ν_b > ν_a`.
pub fn audit_conjecture(
    family: &PotentialParams,
    nu_max: u32,
    betas: &[f64],
    config: &ScanConfig,
) -> Result<AuditReport> {
    check_nu_max(nu_max)?;
    let table = scan_levels(family, &labels_up_to(nu_max), betas, config)?;
    audit_table(&table, config)
}

fn check_nu_max(nu_max: u32) -> Result<()> {
    if !(1..=8).contains(&nu_max) {
        return Err(Error::InvalidParameter(format!("nu_max must be in 1..=8, got {nu_max}")));
    }
    Ok(())
}

/// The audit on a table already computed, e.g. in parallel.
pub fn audit_table(table: &LevelTable, config: &ScanConfig) -> Result<AuditReport> {
    let labels = table.labels();
    let nu_max = labels.iter().map(|l| l.nu).max().unwrap_or(0);
    let mut pairs = Vec::new();
    for &a in labels {
        for &b in labels.iter().filter(|b| b.nu > a.nu) {
            pairs.push(table.pair_crossings(a, b, config)?);
        }
    }
    let solver = RadialSolver::new(config.solver.clone())?;
    let mut ordering = Vec::new();
    for c in pairs.iter().flat_map(|p| p.crossings.iter()) {
        let (a, b) = (c.state_a, c.state_b);
        if b.nu != a.nu + 1 || b.ell != a.ell + 3 {
            continue;
        }
        for ell in b.ell + 1..b.nu {
            let state = StateLabel { nu: b.nu, ell };
            let row = scan_row(&solver, table.family(), &[a, state], c.beta_star);
            let (reference_energy, energy) = (row[0].energy(), row[1].energy());
            ordering.push(OrderingCheck {
                crossing: *c,
                state,
                energy,
                reference_energy,
                below: matches!((energy, reference_energy), (Some(e), Some(r)) if e < r),
            });
        }
    }
    Ok(AuditReport {
        family: *table.family(),
        nu_max,
        pairs,
        ordering,
        non_monotone: table.non_monotone(),
    })
}

/// Sign change of `E_a(q) − E_b(q)` between two sampled `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QCrossing {
    pub state_a: StateLabel,
    pub state_b: StateLabel,
    pub q_bracket: (f64, f64),
}

/// `E(q)` curves at fixed `Z` and `β`, with every bracketed crossing.
#[derive(Clone, Debug, PartialEq)]
pub struct QSweep {
    pub z: f64,
    pub beta: f64,
    pub labels: Vec<StateLabel>,
    pub qs: Vec<f64>,
    pub rows: Vec<Vec<Level>>,
    pub crossings: Vec<QCrossing>,
}

impl QSweep {
    /// Brackets crossings of every pair with `ν_b > ν_a` in rows computed
    /// elsewhere, one row per `q`.
    pub fn from_rows(z: f64, beta: f64, labels: Vec<StateLabel>, qs: Vec<f64>, rows: Vec<Vec<Level>>) -> Result<Self> {
        if rows.len() != qs.len() || rows.iter().any(|r| r.len() != labels.len()) {
            return Err(Error::InvalidParameter("sweep rows do not match the grid".into()));
        }
        let mut crossings = Vec::new();
        for (ja, &a) in labels.iter().enumerate() {
            for (jb, &b) in labels.iter().enumerate().filter(|(_, b)| b.nu > a.nu) {
                let deltas: Vec<Option<f64>> = rows
                    .iter()
                    .map(|row| Some(row[ja].energy()? - row[jb].energy()?))
                    .collect();
                for i in 0..deltas.len().saturating_sub(1) {
                    if let (Some(d0), Some(d1)) = (deltas[i], deltas[i + 1]) {
                        if d0 != 0.0 && (d0 < 0.0) != (d1 < 0.0) {
                            crossings.push(QCrossing {
                                state_a: a,
                                state_b: b,
                                q_bracket: (qs[i], qs[i + 1]),
                            });
                        }
                    }
                }
            }
        }
        Ok(Self {
            z,
            beta,
            labels,
            qs,
            rows,
            crossings,
        })
    }
}

/// `E(q)` for every label up to `nu_max` at fixed `Z` and `β`.
pub fn q_sweep(z: f64, beta: f64, nu_max: u32, qs: &[f64], config: &ScanConfig) -> Result<QSweep> {
    check_nu_max(nu_max)?;
    let labels = labels_up_to(nu_max);
    let solver = RadialSolver::new(config.solver.clone())?;
    let mut rows = Vec::with_capacity(qs.len());
    for &q in qs {
        let params = PotentialParams::new(z, beta, Power::Finite(q))?;
        rows.push(solve_row(&solver, &params, &labels));
    }
    QSweep::from_rows(z, beta, labels, qs.to_vec(), rows)
}
