// SPDX-License-Identifier: Apache-2.0

//! Finite-difference radial solver.
//!
//! The reduced radial equation
//!
//! ```text
//! -½ψ'' + [ℓ(ℓ+1)/(2r²) + V(r)] ψ = E ψ,   ψ(0) = ψ(r_max) = 0
//! ```
//!
//! is discretized with second-order central differences on grids of
//! spacing `h`, `h/2` and `h/4`. The three eigenvalues are combined by two
//! Richardson steps; states are selected by their index in the `ℓ` block,
//! so labels stay attached to the same curve through level crossings.

use alloc::format;
use alloc::vec::Vec;

use crate::tridiag::{fix_sign, SymTridiagonal};
use crate::{Error, PotentialParams, Result, StateLabel};

/// Uniform interior grid `r_i = i·h`, `i = 1..=n_points`, `h = r_max/(n_points+1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialGrid {
    r_max: f64,
    n_points: usize,
}

impl RadialGrid {
    pub const MIN_POINTS: usize = 100;

    pub fn new(r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(Error::InvalidParameter(format!("r_max must be positive, got {r_max}")));
        }
        if n_points < Self::MIN_POINTS {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least {} points, got {n_points}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self { r_max, n_points })
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / (self.n_points + 1) as f64
    }

    /// Radius of the `i`-th interior point, `i` counted from zero.
    pub fn radius(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.spacing()
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.radius(i))
    }

    /// Same `r_max`, half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            r_max: self.r_max,
            n_points: 2 * self.n_points + 1,
        }
    }

    /// Twice the `r_max`, same spacing.
    pub fn extended(&self) -> Self {
        Self {
            r_max: 2.0 * self.r_max,
            n_points: 2 * self.n_points + 1,
        }
    }
}

/// Finite-difference Hamiltonian of one `ℓ` block.
pub fn build_hamiltonian(params: &PotentialParams, ell: u32, grid: &RadialGrid) -> SymTridiagonal {
    let potential: Vec<f64> = grid.radii().map(|r| params.potential(r)).collect();
    hamiltonian_from_samples(&potential, ell, grid)
}

fn hamiltonian_from_samples(potential: &[f64], ell: u32, grid: &RadialGrid) -> SymTridiagonal {
    let h = grid.spacing();
    let kinetic = 1.0 / (h * h);
    let centrifugal = 0.5 * (ell as f64) * (ell as f64 + 1.0);
    let diag = potential
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let r = grid.radius(i);
            kinetic + centrifugal / (r * r) + v
        })
        .collect();
    let off = alloc::vec![-0.5 * kinetic; grid.n_points() - 1];
    SymTridiagonal::new(diag, off).expect("grid has at least two points")
}

/// Sign changes of `psi`, skipping entries below `1e-9·max|psi|`.
pub fn count_nodes(psi: &[f64]) -> usize {
    let peak = psi.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = 1e-9 * peak;
    let mut last = 0.0f64;
    let mut nodes = 0;
    for &x in psi {
        if x.abs() <= floor {
            continue;
        }
        if last != 0.0 && x.signum() != last {
            nodes += 1;
        }
        last = x.signum();
    }
    nodes
}

/// Trapezoid norm on a Dirichlet grid, `(h Σ ψ²)^½`.
pub fn grid_norm(psi: &[f64], h: f64) -> f64 {
    libm::sqrt(h * psi.iter().map(|x| x * x).sum::<f64>())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Interior points of the coarsest grid at the starting `r_max`.
    pub n_points: usize,
    /// Starting domain radius; `None` picks `max(20ν²/Z, 10β, 50)`.
    pub r_max: Option<f64>,
    /// How many times `r_max` may double (at fixed spacing).
    pub max_doublings: u32,
    /// Accept `r_max` once doubling it moves the energy by less than this
    /// fraction of `|E|`.
    pub rmax_tolerance: f64,
    /// Also return the extrapolated wavefunction on the `h/2` grid.
    pub with_wavefunction: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            n_points: 20_000,
            r_max: None,
            max_doublings: 6,
            rmax_tolerance: 1e-10,
            with_wavefunction: true,
        }
    }
}

impl SolverConfig {
    pub fn energies_only() -> Self {
        Self {
            with_wavefunction: false,
            ..Self::default()
        }
    }
}

/// A converged bound state.
///
/// `wavefunction` holds `ψ(r_i)` on `grid`, normalized so that
/// `h Σ ψ² = 1` and positive near the origin. Without the wavefunction
/// option it is the coarse-grid eigenvector.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub label: StateLabel,
    pub params: PotentialParams,
    pub energy: f64,
    pub error_estimate: f64,
    pub node_count: usize,
    pub grid: RadialGrid,
    pub wavefunction: Vec<f64>,
}

impl Eigenpair {
    /// `(r_i, ψ(r_i))` pairs.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.radii().zip(self.wavefunction.iter().copied())
    }
}

#[derive(Clone, Debug, Default)]
pub struct RadialSolver {
    config: SolverConfig,
}

impl RadialSolver {
    pub fn new(config: SolverConfig) -> Result<Self> {
        if config.n_points < RadialGrid::MIN_POINTS {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least {} points, got {}",
                RadialGrid::MIN_POINTS,
                config.n_points
            )));
        }
        if let Some(r) = config.r_max {
            RadialGrid::new(r, config.n_points)?;
        }
        if !(config.rmax_tolerance > 0.0) {
            return Err(Error::InvalidParameter("rmax_tolerance must be positive".into()));
        }
        Ok(Self { config })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn solve_state(&self, params: &PotentialParams, label: StateLabel) -> Result<Eigenpair> {
        self.solve_states(params, &[label]).pop().expect("one label in, one result out")
    }

    /// Solves several states for one potential, sharing the potential
    /// samples. Results come back in the order of `labels`.
    pub fn solve_states(&self, params: &PotentialParams, labels: &[StateLabel]) -> Vec<Result<Eigenpair>> {
        let mut results: Vec<Option<Result<Eigenpair>>> = labels.iter().map(|_| None).collect();
        if labels.is_empty() {
            return Vec::new();
        }
        let nu_max = labels.iter().map(|l| l.nu).max().unwrap_or(1) as f64;
        let start = self.config.r_max.unwrap_or_else(|| {
            (20.0 * nu_max * nu_max / params.z()).max(10.0 * params.beta()).max(50.0)
        });
        let mut grid = match RadialGrid::new(start, self.config.n_points) {
            Ok(g) => g,
            Err(e) => return labels.iter().map(|_| Err(e.clone())).collect(),
        };
        for _ in 0..=self.config.max_doublings {
            let ladder = Ladder::new(params, grid);
            let wide = ladder.wide_samples();
            let mut blocks: Vec<(u32, Block<'_>)> = Vec::new();
            for (slot, label) in labels.iter().enumerate() {
                if results[slot].is_some() {
                    continue;
                }
                let idx = match blocks.iter().position(|(ell, _)| *ell == label.ell) {
                    Some(i) => i,
                    None => {
                        blocks.push((label.ell, Block::new(&ladder, label.ell)));
                        blocks.len() - 1
                    }
                };
                let block = &blocks[idx].1;
                match block.coarse_energy(*label) {
                    Err(e) => results[slot] = Some(Err(e)),
                    Ok(e1) => {
                        let wide_h = hamiltonian_from_samples(&wide, label.ell, &grid.extended());
                        let e_wide = bracketed(&wide_h, label.block_index(), e1, 1e-6 * e1.abs(), block.floor);
                        match e_wide {
                            Err(e) => results[slot] = Some(Err(e)),
                            Ok(e_wide) => {
                                let shift = (e1 - e_wide).abs();
                                if shift <= self.config.rmax_tolerance * e1.abs() {
                                    results[slot] =
                                        Some(block.finish(*label, e1, shift, self.config.with_wavefunction));
                                }
                            }
                        }
                    }
                }
            }
            if results.iter().all(Option::is_some) {
                break;
            }
            grid = grid.extended();
        }
        results
            .into_iter()
            .zip(labels)
            .map(|(r, label)| {
                r.unwrap_or_else(|| {
                    Err(Error::NotConverged(format!(
                        "{label}: energy still moves when r_max doubles beyond {}",
                        grid.r_max() / 2.0
                    )))
                })
            })
            .collect()
    }
}

/// Replaces the small-amplitude ends of an eigenvector (below
/// `1e-3·max|ψ|`, next to the origin and next to `r_max`) by the three-term
/// recurrence of `T` at `lambda`, run from each boundary inward and matched
/// in amplitude.
///
/// Inverse iteration leaves an absolute error of order `eps·‖T‖/gap` in
/// every component. On fine grids that swamps both the `r^{ℓ+1}` rise at the
/// origin and the exponential tail, where it would show up as spurious
/// nodes. In both edge regions the wanted solution is the one growing away
/// from the boundary, so the recurrence is stable in that direction.
fn rebuild_edges(t: &SymTridiagonal, lambda: f64, psi: &mut [f64]) {
    let peak = psi.iter().fold(0.0f64, |m, p| m.max(p.abs()));
    let (d, e) = (t.diag(), t.off());
    let n = psi.len();
    if let Some(m) = psi.iter().position(|p| p.abs() >= 1e-3 * peak) {
        let mut out = Vec::with_capacity(m + 1);
        out.push(1.0);
        for i in 0..m {
            let prev = if i == 0 { 0.0 } else { e[i - 1] * out[i - 1] };
            out.push(((lambda - d[i]) * out[i] - prev) / e[i]);
            rescale_if_large(&mut out);
        }
        splice(&mut psi[..=m], &out, m);
    }
    if let Some(m) = psi.iter().rposition(|p| p.abs() >= 1e-3 * peak) {
        let len = n - m;
        // out[k] holds the value at index n-1-k.
        let mut out = Vec::with_capacity(len);
        out.push(1.0);
        for k in 0..len - 1 {
            let i = n - 1 - k;
            let next = if k == 0 { 0.0 } else { e[i] * out[k - 1] };
            out.push(((lambda - d[i]) * out[k] - next) / e[i - 1]);
            rescale_if_large(&mut out);
        }
        out.reverse();
        splice(&mut psi[m..], &out, 0);
    }
}

fn rescale_if_large(v: &mut [f64]) {
    if v.last().is_some_and(|x| x.abs() > 1e200) {
        v.iter_mut().for_each(|x| *x *= 1e-200);
    }
}

/// Overwrites `target` with `source` scaled to agree at `anchor`.
fn splice(target: &mut [f64], source: &[f64], anchor: usize) {
    let s = source[anchor];
    if s == 0.0 || !s.is_finite() {
        return;
    }
    let factor = target[anchor] / s;
    for (t, v) in target.iter_mut().zip(source) {
        *t = factor * v;
    }
}

/// Divides out the grid-index profile `u_j/(K j^{ℓ+1})` of the discrete
/// free regular solution `u_{j+1} = (2 + ℓ(ℓ+1)/j²) u_j - u_{j-1}`,
/// `u_0 = 0`, `u_1 = 1`, whose limit ratio is `K`.
///
/// For `ℓ ≤ 2` the profile is exactly `1`. For larger `ℓ` it behaves like
/// `1 + c/j²`, an error near the origin that does not scale as `h²` and so
/// survives Richardson extrapolation.
fn remove_centrifugal_stencil_error(ell: u32, psi: &mut [f64]) {
    if ell <= 2 {
        return;
    }
    let c = (ell * (ell + 1)) as f64;
    let power = (ell + 1) as f64;
    let profile_len = psi.len().max(8192);
    let mut ratio = Vec::with_capacity(profile_len);
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    for j in 1..=profile_len {
        let jf = j as f64;
        ratio.push(cur / libm::pow(jf, power));
        let next = (2.0 + c / (jf * jf)) * cur - prev;
        prev = cur;
        cur = next;
    }
    let n = ratio.len();
    let (half, full) = (ratio[n / 2 - 1], ratio[n - 1]);
    let limit = (4.0 * full - half) / 3.0;
    for (p, r) in psi.iter_mut().zip(&ratio) {
        *p *= limit / r;
    }
}

/// Solve with the default configuration.
pub fn solve_state(params: &PotentialParams, label: StateLabel) -> Result<Eigenpair> {
    RadialSolver::default().solve_state(params, label)
}

/// Potential sampled on the finest grid of the `h, h/2, h/4` ladder.
struct Ladder<'p> {
    params: &'p PotentialParams,
    coarse: RadialGrid,
    finest: Vec<f64>,
}

impl<'p> Ladder<'p> {
    fn new(params: &'p PotentialParams, coarse: RadialGrid) -> Self {
        let fine = coarse.refined().refined();
        let finest = fine.radii().map(|r| params.potential(r)).collect();
        Self {
            params,
            coarse,
            finest,
        }
    }

    fn grid(&self, level: usize) -> RadialGrid {
        let mut g = self.coarse;
        for _ in 0..level {
            g = g.refined();
        }
        g
    }

    /// Potential on level `0` (h), `1` (h/2) or `2` (h/4).
    fn samples(&self, level: usize) -> Vec<f64> {
        let stride = 1usize << (2 - level);
        self.finest
            .iter()
            .skip(stride - 1)
            .step_by(stride)
            .copied()
            .take(self.grid(level).n_points())
            .collect()
    }

    /// Coarse-spacing samples on the doubled domain.
    fn wide_samples(&self) -> Vec<f64> {
        let wide = self.coarse.extended();
        let mut out = self.samples(0);
        out.extend((self.coarse.n_points()..wide.n_points()).map(|i| self.params.potential(wide.radius(i))));
        out
    }
}

/// The three Hamiltonians of one `ℓ` block.
struct Block<'l> {
    ladder: &'l Ladder<'l>,
    ell: u32,
    levels: [SymTridiagonal; 3],
    floor: f64,
}

impl<'l> Block<'l> {
    fn new(ladder: &'l Ladder<'l>, ell: u32) -> Self {
        let levels = [0, 1, 2].map(|lv| hamiltonian_from_samples(&ladder.samples(lv), ell, &ladder.grid(lv)));
        let coarse = &levels[0];
        let kinetic = -2.0 * coarse.off()[0];
        let floor = coarse.diag().iter().fold(f64::INFINITY, |m, d| m.min(d - kinetic));
        Self {
            ladder,
            ell,
            levels,
            floor,
        }
    }

    fn coarse_energy(&self, label: StateLabel) -> Result<f64> {
        let t = &self.levels[0];
        let k = label.block_index();
        if k >= t.dim() {
            return Err(Error::IndexOutOfRange {
                requested: k + 1,
                dim: t.dim(),
            });
        }
        if t.sturm_count(0.0) <= k {
            let energy = t.eigenvalue(k)?;
            return Err(Error::Unbound { label, energy });
        }
        let lo = self.floor - 1e-12 * self.floor.abs() - f64::MIN_POSITIVE;
        t.eigenvalue_in(k, lo, 0.0)
    }

    fn finish(&self, label: StateLabel, e1: f64, shift: f64, with_wavefunction: bool) -> Result<Eigenpair> {
        debug_assert_eq!(label.ell, self.ell);
        let k = label.block_index();
        let width = 1e-3 * e1.abs() + 1e-12;
        let e2 = bracketed(&self.levels[1], k, e1, width, self.floor)?;
        let e4 = bracketed(&self.levels[2], k, e2, 0.5 * (e2 - e1).abs() + 1e-12, self.floor)?;
        let r_coarse = (4.0 * e2 - e1) / 3.0;
        let r_fine = (4.0 * e4 - e2) / 3.0;
        let fine_norm = self.levels[2].gershgorin().1.abs().max(self.floor.abs());
        let rounding = 16.0 * f64::EPSILON * fine_norm;
        let error_estimate = (r_fine - r_coarse).abs() + rounding + shift;

        let coarse_grid = self.ladder.grid(0);
        let mut coarse_vec = self.levels[0].eigenvector(e1)?;
        rebuild_edges(&self.levels[0], e1, &mut coarse_vec);
        let node_count = count_nodes(&coarse_vec);
        if node_count != label.nodes() {
            return Err(Error::NodeMismatch {
                label,
                expected: label.nodes(),
                found: node_count,
            });
        }
        let (grid, wavefunction) = if with_wavefunction {
            let half = self.ladder.grid(1);
            let quarter = self.ladder.grid(2);
            let mut psi2 = self.levels[1].eigenvector(e2)?;
            let mut psi4 = self.levels[2].eigenvector(e4)?;
            rebuild_edges(&self.levels[1], e2, &mut psi2);
            rebuild_edges(&self.levels[2], e4, &mut psi4);
            remove_centrifugal_stencil_error(self.ell, &mut psi2);
            remove_centrifugal_stencil_error(self.ell, &mut psi4);
            scale(&mut psi2, half.spacing());
            scale(&mut psi4, quarter.spacing());
            let mut psi: Vec<f64> = psi2
                .iter()
                .enumerate()
                .map(|(i, p2)| (4.0 * psi4[2 * i + 1] - p2) / 3.0)
                .collect();
            scale(&mut psi, half.spacing());
            fix_sign(&mut psi);
            (half, psi)
        } else {
            let mut psi = coarse_vec;
            scale(&mut psi, coarse_grid.spacing());
            (coarse_grid, psi)
        };
        Ok(Eigenpair {
            label,
            params: *self.ladder.params,
            energy: r_fine,
            error_estimate,
            node_count,
            grid,
            wavefunction,
        })
    }
}

fn scale(psi: &mut [f64], h: f64) {
    let norm = grid_norm(psi, h);
    for x in psi.iter_mut() {
        *x /= norm;
    }
}

/// Eigenvalue `k` of `t`, searched in a window around `guess` that widens
/// until it brackets the index.
fn bracketed(t: &SymTridiagonal, k: usize, guess: f64, width: f64, floor: f64) -> Result<f64> {
    let (g_lo, g_hi) = t.gershgorin();
    let lower = floor.min(g_lo) - 1e-12 * floor.abs();
    let upper = g_hi + 1e-12 * g_hi.abs();
    let mut w = width.max(1e-14);
    loop {
        let lo = (guess - w).max(lower);
        let hi = (guess + w).min(upper);
        if t.sturm_count(lo) <= k && t.sturm_count(hi) > k {
            return t.eigenvalue_in(k, lo, hi);
        }
        if lo <= lower && hi >= upper {
            return t.eigenvalue_in(k, lower, upper);
        }
        w *= 16.0;
    }
}
