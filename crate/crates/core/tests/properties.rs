// SPDX-License-Identifier: Apache-2.0

//! Property tests over the public solver, bound and exact-solution API.

use proptest::prelude::*;

use softcoul_core::eigensolver::{Eigenpair, RadialSolver, SolverConfig};
use softcoul_core::envelope::envelope_bound;
use softcoul_core::exact::{exact_case, exact_wavefunction, ROWS};
use softcoul_core::{PotentialParams, StateLabel};

fn params(z: f64, beta: f64, q: f64) -> PotentialParams {
    PotentialParams::finite(z, beta, q).expect("valid parameters")
}

fn solve(p: &PotentialParams, l: StateLabel) -> Eigenpair {
    RadialSolver::new(SolverConfig::energies_only())
        .unwrap()
        .solve_state(p, l)
        .unwrap_or_else(|e| panic!("{l} at {p}: {e}"))
}

fn state() -> impl Strategy<Value = StateLabel> {
    (1u32..=3).prop_flat_map(|nu| (Just(nu), 0..nu)).prop_map(|(nu, ell)| StateLabel { nu, ell })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn charge_and_length_rescale_together(
        z in 0.5f64..2.0,
        beta in 0.0f64..8.0,
        q in 1.0f64..5.0,
        sigma in 0.5f64..2.0,
        l in state(),
    ) {
        let a = solve(&params(z, beta, q), l);
        let b = solve(&params(sigma * z, beta / sigma, q), l);
        let s2 = sigma * sigma;
        let budget = s2 * a.error_estimate + b.error_estimate;
        prop_assert!((b.energy - s2 * a.energy).abs() < budget, "{} vs {}", b.energy, s2 * a.energy);
    }

    #[test]
    fn softening_raises_and_charge_lowers_levels(
        z in 0.5f64..2.0,
        beta in 0.1f64..8.0,
        q in 1.0f64..5.0,
        step in 0.05f64..0.5,
        l in state(),
    ) {
        let here = solve(&params(z, beta, q), l).energy;
        prop_assert!(solve(&params(z, beta * (1.0 + step), q), l).energy > here);
        prop_assert!(solve(&params(z * (1.0 + step), beta, q), l).energy < here);
    }

    #[test]
    fn envelope_bounds_bracket_the_level(
        z in 0.5f64..2.0,
        beta in 0.1f64..10.0,
        q in prop_oneof![Just(1.0f64), Just(2.0)],
        nu in 1u32..=4,
        ell_pick in 0u32..4,
    ) {
        let l = StateLabel { nu, ell: ell_pick % nu };
        let p = params(z, beta, q);
        let pair = solve(&p, l);
        let lower = envelope_bound(&p, l, -1).unwrap();
        let upper = envelope_bound(&p, l, 2).unwrap();
        prop_assert!(upper.valid);
        prop_assert!(lower.value <= pair.energy + pair.error_estimate);
        prop_assert!(pair.energy - pair.error_estimate <= upper.value);
    }

    #[test]
    fn closed_form_states_solve_the_equation(
        k in ROWS,
        ell in 0u32..=3,
        z in 0.5f64..2.0,
    ) {
        let case = exact_case(k, ell, z).unwrap();
        for &beta in &case.betas {
            let wf = exact_wavefunction(&case, beta).unwrap();
            prop_assert!(wf.max_residual(40.0 / wf.decay, 2000) < 1e-8);
            let e = solve(&params(z, beta, 1.0), wf.label).energy;
            prop_assert!(((e - case.energy) / case.energy).abs() < 1e-6, "{} vs {}", e, case.energy);
        }
    }
}
