// SPDX-License-Identifier: Apache-2.0

//! Scaled electron density near the nucleus.
//!
//! With `R(r) = ψ(r)/r` the density is `ρ = R²/(4π)` and the scaled density
//! `η_ℓ(r) = ρ̄(r)/r^{2ℓ} = (ψ(r)/r^{ℓ+1})²/(4π)`, which is finite and
//! positive at `r = 0` and normalized by `4π ∫ η_ℓ r^{2ℓ+2} dr = 1`.
//!
//! For a finite `V(0) = -Z/β` the radial equation forces `η'(0) = 0` and
//! `η''(0)/η(0) = -4(E + Z/β)/(2ℓ+3) ≤ 0`; for the Coulomb case the cusp
//! gives `η'(0)/η(0) = -2Z/(ℓ+1)` instead.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::eigensolver::{Eigenpair, RadialSolver, SolverConfig};
use crate::{Error, PotentialParams, Result, StateLabel};

/// Fewest grid points accepted in the fit window.
pub const MIN_FIT_POINTS: usize = 16;
/// Points in the fit window aimed for by [`solve_for_density`].
pub const TARGET_FIT_POINTS: usize = 96;
const MAX_GRID_POINTS: usize = 400_000;
const FIT_DEGREE: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityProfile {
    pub label: StateLabel,
    pub params: PotentialParams,
    /// Radii of the fit window.
    pub radii: Vec<f64>,
    /// `η_ℓ` at `radii`.
    pub eta_samples: Vec<f64>,
    pub eta0: f64,
    pub eta1: f64,
    pub eta2: f64,
    /// `4π ∫ η_ℓ r^{2ℓ+2} dr` by the trapezoid rule.
    pub normalization: f64,
}

impl DensityProfile {
    pub fn slope_ratio(&self) -> f64 {
        self.eta1 / self.eta0
    }

    pub fn curvature_ratio(&self) -> f64 {
        self.eta2 / self.eta0
    }
}

/// Fit window `0.1·min(β, 1/a)` with `a = √(-2E)`.
pub fn fit_window(params: &PotentialParams, energy: f64) -> f64 {
    let decay_length = 1.0 / libm::sqrt(-2.0 * energy);
    let beta = params.beta();
    0.1 * if beta > 0.0 {
        beta.min(decay_length)
    } else {
        decay_length
    }
}

/// Solves for `label` on a grid fine enough to put about
/// [`TARGET_FIT_POINTS`] points in the fit window.
///
/// A first energies-only solve fixes `E` and `r_max`; the second solve
/// reuses that `r_max` with a spacing chosen from the window.
pub fn solve_for_density(params: &PotentialParams, label: StateLabel, base: &SolverConfig) -> Result<Eigenpair> {
    let probe = RadialSolver::new(SolverConfig {
        with_wavefunction: false,
        ..base.clone()
    })?
    .solve_state(params, label)?;
    let window = fit_window(params, probe.energy);
    let r_max = probe.grid.r_max();
    // The returned wavefunction lives on the h/2 grid.
    let wanted = (r_max * TARGET_FIT_POINTS as f64 / (2.0 * window)) as usize;
    let n_points = wanted.clamp(base.n_points, MAX_GRID_POINTS);
    RadialSolver::new(SolverConfig {
        n_points,
        r_max: Some(r_max),
        with_wavefunction: true,
        ..base.clone()
    })?
    .solve_state(params, label)
}

/// `η_ℓ` near the origin with `η(0)`, `η'(0)`, `η''(0)` from a least-squares
/// quartic over `r ∈ (0, w]`, `w = 0.1·min(β, 1/a)`, `a = √(-2E)`.
pub fn scaled_density(pair: &Eigenpair) -> Result<DensityProfile> {
    if pair.wavefunction.is_empty() {
        return Err(Error::InvalidParameter("eigenpair carries no wavefunction".into()));
    }
    let ell = pair.label.ell as i32;
    let window = fit_window(&pair.params, pair.energy);
    let (radii, eta_samples): (Vec<f64>, Vec<f64>) = pair
        .samples()
        .take_while(|&(r, _)| r <= window)
        .map(|(r, psi)| {
            let reduced = psi / libm::pow(r, (ell + 1) as f64);
            (r, reduced * reduced / (4.0 * PI))
        })
        .unzip();
    if radii.len() < MIN_FIT_POINTS {
        return Err(Error::CoarseGrid { points: radii.len() });
    }
    let x: Vec<f64> = radii.iter().map(|r| r / window).collect();
    let c = least_squares_poly(&x, &eta_samples, FIT_DEGREE);
    let h = pair.grid.spacing();
    let normalization = h * pair.wavefunction.iter().map(|p| p * p).sum::<f64>();
    Ok(DensityProfile {
        label: pair.label,
        params: pair.params,
        radii,
        eta_samples,
        eta0: c[0],
        eta1: c[1] / window,
        eta2: 2.0 * c[2] / (window * window),
        normalization,
    })
}

/// Least-squares polynomial coefficients (ascending) by Householder QR.
fn least_squares_poly(x: &[f64], y: &[f64], degree: usize) -> Vec<f64> {
    let n = x.len();
    let m = degree + 1;
    let mut a: Vec<Vec<f64>> = (0..m)
        .map(|j| x.iter().map(|&xi| libm::pow(xi, j as f64)).collect())
        .collect();
    let mut b = y.to_vec();
    for k in 0..m {
        let norm = libm::sqrt(a[k][k..].iter().map(|v| v * v).sum::<f64>());
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for col in a.iter_mut().skip(k).chain(core::iter::once(&mut b)) {
            let dot: f64 = v.iter().zip(&col[k..]).map(|(p, q)| p * q).sum();
            let f = 2.0 * dot / vnorm2;
            for (ci, vi) in col[k..].iter_mut().zip(&v) {
                *ci -= f * vi;
            }
        }
    }
    let mut c = alloc::vec![0.0; m];
    for i in (0..m).rev() {
        let s: f64 = (i + 1..m).map(|j| a[j][i] * c[j]).sum();
        c[i] = (b[i] - s) / a[i][i];
    }
    debug_assert!(n >= m);
    c
}

/// Predicted `η''(0)/η(0) = -4(E + Z/β)/(2ℓ+3)`.
pub fn predicted_curvature_ratio(params: &PotentialParams, ell: u32, energy: f64) -> Result<f64> {
    if params.beta() == 0.0 {
        return Err(Error::CoulombCusp);
    }
    Ok(-4.0 / (2.0 * ell as f64 + 3.0) * (energy + params.z() / params.beta()))
}

/// Coulomb cusp `η'(0)/η(0) = -2Z/(ℓ+1)`.
pub fn coulomb_slope_ratio(z: f64, ell: u32) -> f64 {
    -2.0 * z / (ell as f64 + 1.0)
}

/// Nodeless exact `q = 1` state at `β = (ℓ+2)/Z`: `-2Z²/(ℓ+2)²`.
pub fn v1_exact_curvature_ratio(z: f64, ell: u32) -> f64 {
    let n = ell as f64 + 2.0;
    -2.0 * z * z / (n * n)
}

/// `(β, E)` of the exact nodeless `q = 2` state:
/// `β = √(2(ℓ+2)³)/Z`, `E = -Z²/(2(ℓ+2)²)`.
pub fn v2_exact_point(z: f64, ell: u32) -> (f64, f64) {
    let n = ell as f64 + 2.0;
    (libm::sqrt(2.0 * n * n * n) / z, -z * z / (2.0 * n * n))
}

/// `η''(0)/η(0)` at [`v2_exact_point`]:
/// `-2Z²[√(2(ℓ+2)) - 1]/((2ℓ+3)(ℓ+2)²)`.
pub fn v2_exact_curvature_ratio(z: f64, ell: u32) -> f64 {
    let n = ell as f64 + 2.0;
    -2.0 * z * z * (libm::sqrt(2.0 * n) - 1.0) / ((2.0 * ell as f64 + 3.0) * n * n)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcavityReport {
    pub predicted_ratio: f64,
    pub measured_ratio: f64,
    /// `η''(0) ≤ 0` up to the fit tolerance.
    pub concave: bool,
    /// `E + Z/β`, non-negative for every bound state.
    pub slack: f64,
}

/// Relative fit tolerance used by [`concavity_check`].
pub const CONCAVITY_TOLERANCE: f64 = 1e-2;

/// Measured against predicted curvature of `η` at the origin.
pub fn concavity_check(pair: &Eigenpair) -> Result<ConcavityReport> {
    let predicted_ratio = predicted_curvature_ratio(&pair.params, pair.label.ell, pair.energy)?;
    let profile = scaled_density(pair)?;
    let measured_ratio = profile.curvature_ratio();
    Ok(ConcavityReport {
        predicted_ratio,
        measured_ratio,
        concave: measured_ratio <= CONCAVITY_TOLERANCE * predicted_ratio.abs(),
        slack: pair.energy + pair.params.z() / pair.params.beta(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn solve(z: f64, beta: f64, q: f64, s: &str) -> Eigenpair {
        let params = PotentialParams::finite(z, beta, q).unwrap();
        solve_for_density(&params, s.parse().unwrap(), &SolverConfig::default()).unwrap()
    }

    #[test]
    fn least_squares_recovers_a_polynomial() {
        let x: Vec<f64> = (1..30).map(|i| i as f64 / 29.0).collect();
        let y: Vec<f64> = x.iter().map(|x| 2.0 - 3.0 * x + 0.5 * x * x * x * x).collect();
        let c = least_squares_poly(&x, &y, 4);
        for (a, b) in c.iter().zip([2.0, -3.0, 0.0, 0.0, 0.5]) {
            assert!((a - b).abs() < 1e-12, "{c:?}");
        }
    }

    #[test]
    fn hydrogen_cusp() {
        for (s, z) in [("1s", 1.0), ("2p", 1.0), ("2s", 2.0)] {
            let pair = solve(z, 0.0, 1.0, s);
            let d = scaled_density(&pair).unwrap();
            let expected = coulomb_slope_ratio(z, pair.label.ell);
            assert_relative_eq!(d.slope_ratio(), expected, max_relative = 1e-3);
            assert_relative_eq!(d.normalization, 1.0, max_relative = 1e-8);
            assert!(d.eta_samples.iter().all(|&e| e >= 0.0));
            assert_eq!(concavity_check(&pair), Err(Error::CoulombCusp));
        }
        // η(0) for 1s is 1/π (ψ = 2r e^{-r}).
        let d = scaled_density(&solve(1.0, 0.0, 1.0, "1s")).unwrap();
        assert_relative_eq!(d.eta0, 1.0 / PI, max_relative = 1e-4);
    }

    #[test]
    fn exact_nodeless_q1_state() {
        // ψ = N r e^{-r/2}(1 + r/2), ∫ψ² = 1 gives N² = 1/14.
        let pair = solve(1.0, 2.0, 1.0, "1s");
        let d = scaled_density(&pair).unwrap();
        assert_relative_eq!(d.eta0, 1.0 / (14.0 * 4.0 * PI), max_relative = 1e-5);
        assert!(d.eta1.abs() < 1e-4 * d.eta0);
        let report = concavity_check(&pair).unwrap();
        assert_relative_eq!(report.predicted_ratio, -0.5, max_relative = 1e-8);
        assert_relative_eq!(report.measured_ratio, v1_exact_curvature_ratio(1.0, 0), max_relative = 1e-2);
        assert!(report.concave && report.slack > 0.0);
    }

    #[test]
    fn exact_nodeless_q2_state() {
        let (beta, e) = v2_exact_point(1.0, 0);
        assert_eq!((beta, e), (4.0, -0.125));
        assert_relative_eq!(v2_exact_curvature_ratio(1.0, 0), -1.0 / 6.0, max_relative = 1e-15);
        let pair = solve(1.0, beta, 2.0, "1s");
        assert_relative_eq!(pair.energy, e, max_relative = 1e-8);
        let r = concavity_check(&pair).unwrap();
        assert_relative_eq!(r.predicted_ratio, -1.0 / 6.0, max_relative = 1e-7);
        assert_relative_eq!(r.measured_ratio, -1.0 / 6.0, max_relative = 1e-2);
    }

    #[test]
    fn closed_forms_agree_with_the_general_prediction() {
        for ell in 0..5 {
            for z in [0.5, 1.0, 3.0] {
                let n = ell as f64 + 2.0;
                let e = -z * z / (2.0 * n * n);
                let p1 = PotentialParams::finite(z, n / z, 1.0).unwrap();
                assert_relative_eq!(
                    predicted_curvature_ratio(&p1, ell, e).unwrap(),
                    v1_exact_curvature_ratio(z, ell),
                    max_relative = 1e-14
                );
                let (beta, e2) = v2_exact_point(z, ell);
                let p2 = PotentialParams::finite(z, beta, 2.0).unwrap();
                assert_relative_eq!(
                    predicted_curvature_ratio(&p2, ell, e2).unwrap(),
                    v2_exact_curvature_ratio(z, ell),
                    max_relative = 1e-14
                );
            }
        }
    }

    #[test]
    fn critical_limit() {
        let p = PotentialParams::finite(1.0, 5.0, 3.0).unwrap();
        assert_relative_eq!(predicted_curvature_ratio(&p, 1, 0.0).unwrap(), -0.8 * 0.2, max_relative = 1e-15);
    }

    #[test]
    fn soft_core_states_are_concave() {
        for (q, beta, s) in [(1.0, 1.0, "1s"), (2.0, 5.0, "2p"), (3.0, 20.0, "3d"), (4.0, 1.0, "2s"), (1.0, 5.0, "4f")] {
            let pair = solve(1.0, beta, q, s);
            let d = scaled_density(&pair).unwrap();
            assert!(d.eta1.abs() < 1e-3 * d.eta0, "{s}: {}", d.slope_ratio());
            assert_relative_eq!(d.normalization, 1.0, max_relative = 1e-8);
            let r = concavity_check(&pair).unwrap();
            assert!(r.concave && r.slack >= 0.0);
            assert_relative_eq!(r.measured_ratio, r.predicted_ratio, max_relative = 1e-2);
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let pair = RadialSolver::new(SolverConfig {
            n_points: 200,
            ..SolverConfig::default()
        })
        .unwrap()
        .solve_state(&PotentialParams::finite(1.0, 0.05, 1.0).unwrap(), "1s".parse().unwrap())
        .unwrap();
        assert!(matches!(scaled_density(&pair), Err(Error::CoarseGrid { .. })));
    }
}
