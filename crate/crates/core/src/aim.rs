// SPDX-License-Identifier: Apache-2.0

//! Asymptotic iteration method for the `q = 1` potential.
//!
//! With `ψ = r^(ℓ+1) e^(-ar) f(r)` and `a = √(-2E)` the radial equation
//! becomes `f'' = λ₀ f' + s₀ f` with
//!
//! ```text
//! λ₀ = 2(a - (ℓ+1)/r),    s₀ = 2(ℓ+1)a/r - 2Z/(r+β).
//! ```
//!
//! The iterates `λₙ = λ'ₙ₋₁ + sₙ₋₁ + λ₀λₙ₋₁`, `sₙ = s'ₙ₋₁ + s₀λₙ₋₁` are
//! carried as Taylor jets about a center `r₀`, and eigenvalues are the
//! energies where `δₙ = λₙsₙ₋₁ - λₙ₋₁sₙ` vanishes independently of `n`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::jet::TaylorJet;
use crate::{Error, PotentialParams, Power, Result};

/// One iterate `(λₙ, sₙ)` together with the seeds `(λ₀, s₀)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AimState {
    pub lambda0: TaylorJet,
    pub s0: TaylorJet,
    pub lambda: TaylorJet,
    pub s: TaylorJet,
    pub iteration: usize,
    /// Decay constant `√(-2E)`.
    pub a: f64,
}

impl AimState {
    /// Seeds for an arbitrary equation `f'' = λ₀f' + s₀f`.
    pub fn from_seeds(lambda0: TaylorJet, s0: TaylorJet, a: f64) -> Self {
        Self {
            lambda: lambda0.clone(),
            s: s0.clone(),
            lambda0,
            s0,
            iteration: 0,
            a,
        }
    }

    /// Seeds of the `q = 1` potential at trial energy `energy < 0`, expanded
    /// about `r0` to order `order`.
    pub fn initial(params: &PotentialParams, ell: u32, energy: f64, r0: f64, order: usize) -> Result<Self> {
        require_q1(params)?;
        if !(energy < 0.0) {
            return Err(Error::InvalidParameter(format!("trial energy must be negative, got {energy}")));
        }
        if !(r0 > 0.0 && r0.is_finite()) {
            return Err(Error::InvalidParameter(format!("expansion point must be positive, got {r0}")));
        }
        let a = libm::sqrt(-2.0 * energy);
        let l1 = ell as f64 + 1.0;
        let inv_r = TaylorJet::reciprocal_shifted(r0, 0.0, order)?;
        let inv_rb = TaylorJet::reciprocal_shifted(r0, params.beta(), order)?;
        let lambda0 = &TaylorJet::constant(r0, 2.0 * a, order) - &inv_r.scale(2.0 * l1);
        let s0 = &inv_r.scale(2.0 * l1 * a) - &inv_rb.scale(2.0 * params.z());
        Ok(Self::from_seeds(lambda0, s0, a))
    }
}

fn require_q1(params: &PotentialParams) -> Result<()> {
    if params.q() != Power::Finite(1.0) {
        return Err(Error::InvalidParameter(format!(
            "the iteration is set up for q = 1, got q = {}",
            params.q()
        )));
    }
    Ok(())
}

/// Advance `(λₙ, sₙ)` to `(λₙ₊₁, sₙ₊₁)`; uses up one order of the jets.
pub fn aim_step(state: &AimState) -> Result<AimState> {
    if state.lambda.order() == 0 || state.s.order() == 0 {
        return Err(Error::JetOrderExhausted {
            needed: 1,
            available: 0,
        });
    }
    let dl = state.lambda.derivative()?;
    let ds = state.s.derivative()?;
    let lambda = &(&dl + &state.s) + &(&state.lambda0 * &state.lambda);
    let s = &ds + &(&state.s0 * &state.lambda);
    Ok(AimState {
        lambda0: state.lambda0.clone(),
        s0: state.s0.clone(),
        lambda,
        s,
        iteration: state.iteration + 1,
        a: state.a,
    })
}

/// `δₙ = λₙsₙ₋₁ - λₙ₋₁sₙ` at `r0` for `n = 1..=n_max`.
pub fn aim_delta_sequence(params: &PotentialParams, ell: u32, energy: f64, r0: f64, n_max: usize) -> Result<Vec<f64>> {
    Ok(delta_terms(params, ell, energy, r0, n_max)?.into_iter().map(|(d, _)| d).collect())
}

/// `δₙ` paired with `|δₙ| / (|λₙsₙ₋₁| + |λₙ₋₁sₙ|)`, the fraction that
/// survives cancellation.
fn delta_terms(params: &PotentialParams, ell: u32, energy: f64, r0: f64, n_max: usize) -> Result<Vec<(f64, f64)>> {
    let order = n_max + 6;
    let mut prev = AimState::initial(params, ell, energy, r0, order)?;
    let mut out = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        let next = aim_step(&prev)?;
        let t1 = next.lambda.value() * prev.s.value();
        let t2 = prev.lambda.value() * next.s.value();
        let size = t1.abs() + t2.abs();
        let kept = if size > 0.0 { (t1 - t2).abs() / size } else { 0.0 };
        out.push((t1 - t2, kept));
        prev = next;
    }
    Ok(out)
}

/// `δₙ` at `r0` for one iteration count `n ≥ 1`.
pub fn aim_delta(params: &PotentialParams, ell: u32, energy: f64, n: usize, r0: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("iteration count must be at least 1".into()));
    }
    Ok(aim_delta_sequence(params, ell, energy, r0, n)?[n - 1])
}

/// Maximum of `r^(ℓ+1) e^(-ar)`, the default expansion point.
pub fn default_center(ell: u32, energy: f64) -> f64 {
    (ell as f64 + 1.0) / libm::sqrt(-2.0 * energy)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AimConfig {
    /// First iteration examined for stable roots.
    pub n_min: usize,
    /// Last iteration; jets are truncated at order `n_max + 6`.
    pub n_max: usize,
    /// Expansion points tried, as multiples of `(ℓ+1)/a`.
    pub center_factors: Vec<f64>,
    /// Trial energies in the initial scan (uniform in `a`).
    pub scan_points: usize,
    /// Roots of successive iterations closer than this are accepted.
    pub tolerance: f64,
    /// How many successive iterations must agree (at least 2).
    pub agreeing_iterations: usize,
    /// Stop once this many roots are accepted.
    pub max_roots: Option<usize>,
    /// Also require a root of `δₙ` about half and twice the center within
    /// this distance; `None` skips the check.
    pub center_tolerance: Option<f64>,
}

impl Default for AimConfig {
    fn default() -> Self {
        Self {
            n_min: 8,
            n_max: 48,
            center_factors: vec![1.0, 2.0, 4.0],
            scan_points: 240,
            tolerance: 1e-8,
            agreeing_iterations: 3,
            max_roots: None,
            center_tolerance: None,
        }
    }
}

/// An eigenvalue accepted by the stabilization test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AimRoot {
    pub energy: f64,
    /// Iteration `n` at which `δₙ` and `δₙ₋₁` first agreed.
    pub iteration: usize,
    /// Expansion point used, as a multiple of `(ℓ+1)/a`.
    pub center_factor: f64,
}

/// Default search window `(-Z/β, 0)`, kept slightly inside both ends.
pub fn default_bracket(params: &PotentialParams) -> (f64, f64) {
    let z = params.z();
    let bottom = if params.beta() > 0.0 { -z / params.beta() } else { -2.0 * z * z };
    (bottom * (1.0 - 1e-9), -1e-4 * z * z)
}

/// Stabilized roots of `δₙ(E)` in `bracket`, ascending.
///
/// Roots of successive iterations that agree within `config.tolerance` are
/// accepted; if none stabilizes by `n_max` for any expansion point the
/// result is [`Error::NotConverged`].
pub fn aim_solve(params: &PotentialParams, ell: u32, bracket: (f64, f64), config: &AimConfig) -> Result<Vec<AimRoot>> {
    require_q1(params)?;
    let (e_lo, e_hi) = bracket;
    let floor = if params.beta() > 0.0 { -params.z() / params.beta() } else { f64::NEG_INFINITY };
    if !(e_lo < e_hi && e_hi < 0.0 && e_lo > floor) {
        return Err(Error::InvalidParameter(format!(
            "energy bracket ({e_lo}, {e_hi}) must lie inside ({floor}, 0)"
        )));
    }
    if config.n_max < 10 || config.n_min < 1 || config.n_min >= config.n_max {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= n_min < n_max and n_max >= 10, got {}..{}",
            config.n_min, config.n_max
        )));
    }
    if config.agreeing_iterations < 2 {
        return Err(Error::InvalidParameter("at least two iterations must agree".into()));
    }
    if config.scan_points < 2 || config.center_factors.is_empty() {
        return Err(Error::InvalidParameter("scan needs >= 2 points and >= 1 center".into()));
    }

    let mut accepted: Vec<AimRoot> = Vec::new();
    let a_lo = libm::sqrt(-2.0 * e_hi);
    let a_hi = libm::sqrt(-2.0 * e_lo);
    let energies: Vec<f64> = (0..=config.scan_points)
        .map(|j| {
            let a = a_hi + (a_lo - a_hi) * j as f64 / config.scan_points as f64;
            -0.5 * a * a
        })
        .collect();
    for &factor in &config.center_factors {
        let table = energies
            .iter()
            .map(|&e| delta_terms(params, ell, e, factor * default_center(ell, e), config.n_max))
            .collect::<Result<Vec<_>>>()?;
        let mut history: Vec<Vec<f64>> = Vec::new();
        for n in config.n_min..=config.n_max {
            let mut roots = Vec::new();
            for j in 0..config.scan_points {
                let (d0, k0) = table[j][n - 1];
                let (d1, k1) = table[j + 1][n - 1];
                if k0 < SIGNIFICANT || k1 < SIGNIFICANT || d0.signum() == d1.signum() {
                    continue;
                }
                let f = |e: f64| aim_delta(params, ell, e, n, factor * default_center(ell, e));
                roots.push(illinois(f, energies[j], energies[j + 1], d0, d1)?);
            }
            for &x in &roots {
                let stable = history.len() + 1 >= config.agreeing_iterations
                    && history
                        .iter()
                        .rev()
                        .take(config.agreeing_iterations - 1)
                        .all(|prev| prev.iter().any(|y| (x - y).abs() < config.tolerance));
                let known = accepted.iter().any(|r| (r.energy - x).abs() < 10.0 * config.tolerance);
                let confirmed = match config.center_tolerance {
                    Some(tol) if stable && !known => independent_of_center(params, ell, x, n, factor, tol)?,
                    _ => true,
                };
                if stable && !known && confirmed {
                    accepted.push(AimRoot {
                        energy: x,
                        iteration: n,
                        center_factor: factor,
                    });
                }
            }
            history.push(roots);
        }
        if let Some(k) = config.max_roots {
            if accepted.len() >= k {
                break;
            }
        }
    }
    if accepted.is_empty() {
        return Err(Error::NotConverged(format!(
            "no root of delta_n stabilized within {} by n = {} in ({e_lo}, {e_hi})",
            config.tolerance, config.n_max
        )));
    }
    accepted.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    if let Some(k) = config.max_roots {
        accepted.truncate(k);
    }
    Ok(accepted)
}

/// Smallest surviving fraction of `δₙ` for its sign to be trusted.
const SIGNIFICANT: f64 = 1e-11;

/// Whether `δₙ` expanded about half and twice the center also vanishes
/// within `tolerance` of `x`.
fn independent_of_center(params: &PotentialParams, ell: u32, x: f64, n: usize, factor: f64, tolerance: f64) -> Result<bool> {
    let window = 100.0 * tolerance;
    for other in [0.5 * factor, 2.0 * factor] {
        let f = |e: f64| aim_delta(params, ell, e, n, other * default_center(ell, e));
        let (lo, hi) = (x - window, (x + window).min(-f64::MIN_POSITIVE));
        let (f_lo, f_hi) = (f(lo)?, f(hi)?);
        if f_lo.signum() == f_hi.signum() {
            return Ok(false);
        }
        let root = illinois(f, lo, hi, f_lo, f_hi)?;
        if (root - x).abs() > tolerance {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Illinois-modified regula falsi on a sign-changing bracket.
fn illinois<F>(f: F, mut x0: f64, mut x1: f64, mut f0: f64, mut f1: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut side = 0i8;
    for _ in 0..200 {
        let x = (x0 * f1 - x1 * f0) / (f1 - f0);
        let x = if x > x0.min(x1) && x < x0.max(x1) { x } else { 0.5 * (x0 + x1) };
        if (x1 - x0).abs() <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == f1.signum() {
            x1 = x;
            f1 = fx;
            if side == -1 {
                f0 *= 0.5;
            }
            side = -1;
        } else {
            x0 = x;
            f0 = fx;
            if side == 1 {
                f1 *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (x0 + x1))
}
