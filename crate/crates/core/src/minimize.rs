// SPDX-License-Identifier: Apache-2.0

//! One-dimensional minimization on `r > 0`.

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

const GOLDEN: f64 = 0.381_966_011_250_105_1;
const SCAN_POINTS: usize = 96;
const MAX_EXPANSIONS: usize = 8;

/// Minimizes `f` over `r > 0`, starting from the log-spaced window
/// `[lo, hi]`.
///
/// The window is widened by a factor 10³ on whichever side holds the
/// smallest sample until the minimum is interior. Golden-section search
/// shrinks the bracket, then bisection on the sign of `df` pins `x` to
/// relative tolerance `rel_tol`. When `f` is too flat for golden section to
/// keep the sign change of `df`, the bisection restarts from the scan bracket.
pub fn minimize_positive<F, D>(f: F, df: D, mut lo: f64, mut hi: f64, rel_tol: f64) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("bad search window [{lo}, {hi}]")));
    }
    for _ in 0..=MAX_EXPANSIONS {
        let ratio = libm::pow(hi / lo, 1.0 / (SCAN_POINTS - 1) as f64);
        let mut best = 0;
        let mut best_value = f64::INFINITY;
        let mut x = lo;
        for i in 0..SCAN_POINTS {
            let v = f(x);
            if v < best_value {
                best_value = v;
                best = i;
            }
            x *= ratio;
        }
        if best == 0 {
            lo /= 1e3;
            continue;
        }
        if best == SCAN_POINTS - 1 {
            hi *= 1e3;
            continue;
        }
        let at = |i: usize| lo * libm::pow(ratio, i as f64);
        let (outer_a, outer_b) = (at(best - 1), at(best + 1));
        let (a, b) = golden(&f, outer_a, outer_b, rel_tol);
        let x = polish(&df, a, b, rel_tol)
            .or_else(|| polish(&df, outer_a, outer_b, rel_tol))
            .unwrap_or(0.5 * (a + b));
        return Ok(Minimum { x, value: f(x) });
    }
    Err(Error::NoInteriorMinimum)
}

fn golden<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, rel_tol: f64) -> (f64, f64) {
    let mut x1 = a + GOLDEN * (b - a);
    let mut x2 = b - GOLDEN * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e3 * rel_tol * b {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - GOLDEN * (b - a);
            f2 = f(x2);
        }
    }
    (a, b)
}

/// Bisection on `df`, if it goes from negative to positive over `[a, b]`.
fn polish<D: Fn(f64) -> f64>(df: &D, mut a: f64, mut b: f64, rel_tol: f64) -> Option<f64> {
    if !(df(a) < 0.0 && df(b) > 0.0) {
        return None;
    }
    while b - a > rel_tol * b {
        let mid = 0.5 * (a + b);
        if df(mid) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn hydrogenic_minimum() {
        // P²/(2r²) - Z/r has its minimum -Z²/(2P²) at r = P²/Z.
        let (p, z) = (3.0, 2.0);
        let m = minimize_positive(
            |r| p * p / (2.0 * r * r) - z / r,
            |r| -p * p / (r * r * r) + z / (r * r),
            1e-2,
            1e2,
            1e-12,
        )
        .unwrap();
        assert_relative_eq!(m.x, 4.5, max_relative = 1e-11);
        assert_relative_eq!(m.value, -z * z / (2.0 * p * p), max_relative = 1e-14);
    }

    #[test]
    fn expands_a_bad_window() {
        let m = minimize_positive(|r| (r - 5e4) * (r - 5e4), |r| 2.0 * (r - 5e4), 1.0, 10.0, 1e-12).unwrap();
        assert_relative_eq!(m.x, 5e4, max_relative = 1e-11);
    }

    #[test]
    fn monotone_function_has_no_minimum() {
        assert_eq!(
            minimize_positive(|r| -r, |_| -1.0, 1.0, 2.0, 1e-10),
            Err(Error::NoInteriorMinimum)
        );
    }

    proptest! {
        #[test]
        fn finds_shifted_quartic(c in 1e-3f64..1e3) {
            let m = minimize_positive(|r| libm::pow(r - c, 4.0) - 1.0, |r| 4.0 * libm::pow(r - c, 3.0), c / 7.0, c * 3.0, 1e-10).unwrap();
            prop_assert!((m.x - c).abs() < 1e-8 * c);
        }
    }
}
