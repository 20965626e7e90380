// SPDX-License-Identifier: Apache-2.0

//! Symmetric tridiagonal eigenproblems.
//!
//! Eigenvalues are isolated with Sturm counts and polished with a
//! safeguarded Newton iteration on `det(T - x)`; eigenvectors come from
//! inverse iteration with a partially pivoted tridiagonal LU.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.off[i] * x[i + 1];
            }
            y[i] = acc;
        }
        y
    }

    /// Interval `[lo, hi]` containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut radius = 0.0;
            if i > 0 {
                radius += self.off[i - 1].abs();
            }
            if i + 1 < n {
                radius += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }

    fn norm_bound(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    fn pivmin(&self) -> f64 {
        let emax = self.off.iter().fold(1.0f64, |m, e| m.max(e * e));
        f64::MIN_POSITIVE * emax
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        self.sturm(x, false).0
    }

    /// Sturm count at `x` and, when requested, `d/dx ln|det(T - x)|`.
    fn sturm(&self, x: f64, with_derivative: bool) -> (usize, f64) {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        let mut dq = -1.0;
        let mut logdet = dq / q;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            let e2 = self.off[i - 1] * self.off[i - 1];
            let prev = q;
            q = (self.diag[i] - x) - e2 / prev;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
            if with_derivative {
                dq = -1.0 + e2 * dq / (prev * prev);
                logdet += dq / q;
            }
        }
        (count, logdet)
    }

    /// The `k`-th eigenvalue (0-based, ascending) inside a bracket with
    /// `sturm_count(lo) <= k < sturm_count(hi)`.
    pub fn eigenvalue_in(&self, k: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
        if k >= self.dim() {
            return Err(Error::IndexOutOfRange {
                requested: k + 1,
                dim: self.dim(),
            });
        }
        if self.sturm_count(lo) > k || self.sturm_count(hi) <= k {
            return Err(Error::InvalidParameter(format!(
                "[{lo}, {hi}] does not bracket eigenvalue {k}"
            )));
        }
        let floor = 8.0 * libm::sqrt(self.pivmin());
        let mut x = 0.5 * (lo + hi);
        let mut width_two_back = f64::INFINITY;
        let mut width_one_back = hi - lo;
        for _ in 0..400 {
            let (count, dlog) = self.sturm(x, true);
            if count <= k {
                lo = x;
            } else {
                hi = x;
            }
            let tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + floor;
            if hi - lo <= tol {
                return Ok(0.5 * (lo + hi));
            }
            let width = hi - lo;
            let shrinking = width <= 0.5 * width_two_back;
            width_two_back = width_one_back;
            width_one_back = width;
            let newton = if dlog.is_finite() && dlog != 0.0 {
                x - 1.0 / dlog
            } else {
                f64::NAN
            };
            if newton > lo && newton < hi && shrinking {
                let step = (newton - x).abs();
                x = newton;
                if step <= tol {
                    return Ok(x);
                }
            } else if newton > lo && newton < hi && (newton - x).abs() <= tol {
                return Ok(newton);
            } else {
                x = 0.5 * (lo + hi);
                width_two_back = f64::INFINITY;
            }
        }
        Err(Error::NotConverged(format!("eigenvalue {k} in [{lo}, {hi}]")))
    }

    /// The `k`-th eigenvalue (0-based, ascending).
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        let (lo, hi) = self.gershgorin();
        let pad = f64::EPSILON * lo.abs().max(hi.abs()) + libm::sqrt(self.pivmin());
        self.eigenvalue_in(k, lo - pad, hi + pad)
    }

    /// The `k` smallest eigenvalues, ascending.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        if k == 0 || k > self.dim() {
            return Err(Error::IndexOutOfRange {
                requested: k,
                dim: self.dim(),
            });
        }
        let (lo, hi) = self.gershgorin();
        let pad = f64::EPSILON * lo.abs().max(hi.abs()) + libm::sqrt(self.pivmin());
        let (lo, hi) = (lo - pad, hi + pad);
        let mut out = Vec::with_capacity(k);
        let mut left = lo;
        for j in 0..k {
            let value = self.eigenvalue_in(j, left, hi)?;
            out.push(value);
            let next = value + f64::EPSILON * value.abs();
            if self.sturm_count(next) <= j + 1 {
                left = next;
            }
        }
        Ok(out)
    }

    /// Unit-norm eigenvector for an eigenvalue approximation, by inverse
    /// iteration from a deterministic pseudo-random start. The sign is
    /// chosen so the first entry above `1e-9·max|v|` is positive.
    pub fn eigenvector(&self, eigenvalue: f64) -> Result<Vec<f64>> {
        let n = self.dim();
        let scale = self.norm_bound().max(f64::MIN_POSITIVE);
        let lu = ShiftedLu::new(self, eigenvalue, f64::EPSILON * scale);
        let mut rng = SplitMix64(0x5eed_50f7_c0de_0001);
        let mut v: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
        normalize(&mut v);
        let target = 1e3 * f64::EPSILON * scale;
        let mut residual = f64::INFINITY;
        for _ in 0..4 {
            lu.solve(&mut v);
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::NotConverged(format!(
                    "inverse iteration overflow at eigenvalue {eigenvalue}"
                )));
            }
            normalize(&mut v);
            let tv = self.matvec(&v);
            residual = libm::sqrt(
                tv.iter()
                    .zip(&v)
                    .map(|(a, b)| (a - eigenvalue * b) * (a - eigenvalue * b))
                    .sum::<f64>(),
            );
            if residual <= target {
                break;
            }
        }
        if residual > target {
            return Err(Error::NotConverged(format!(
                "inverse iteration residual {residual:e} at eigenvalue {eigenvalue}"
            )));
        }
        fix_sign(&mut v);
        Ok(v)
    }
}

fn normalize(v: &mut [f64]) {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if peak == 0.0 {
        return;
    }
    for x in v.iter_mut() {
        *x /= peak;
    }
    let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
    for x in v.iter_mut() {
        *x /= norm;
    }
}

/// Flip `v` so that its first entry above `1e-9·max|v|` is positive.
pub fn fix_sign(v: &mut [f64]) {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-9 * peak) {
        if *first < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// `T - σI = P L U` with `U` upper triangular of bandwidth 2.
struct ShiftedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(t: &SymTridiagonal, shift: f64, tiny: f64) -> Self {
        let n = t.dim();
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut mult = vec![0.0; n];
        let mut swapped = vec![false; n];
        let mut cur0 = t.diag[0] - shift;
        let mut cur1 = if n > 1 { t.off[0] } else { 0.0 };
        for i in 0..n {
            if i + 1 == n {
                u0[i] = if cur0.abs() < tiny { tiny } else { cur0 };
                break;
            }
            let below = t.off[i];
            let next_d = t.diag[i + 1] - shift;
            let next_e = if i + 2 < n { t.off[i + 1] } else { 0.0 };
            if cur0.abs() >= below.abs() {
                let pivot = if cur0.abs() < tiny { tiny } else { cur0 };
                let m = below / pivot;
                u0[i] = pivot;
                u1[i] = cur1;
                u2[i] = 0.0;
                mult[i] = m;
                cur0 = next_d - m * cur1;
                cur1 = next_e;
            } else {
                let m = cur0 / below;
                u0[i] = below;
                u1[i] = next_d;
                u2[i] = next_e;
                mult[i] = m;
                swapped[i] = true;
                cur0 = cur1 - m * next_d;
                cur1 = -m * next_e;
            }
        }
        Self {
            u0,
            u1,
            u2,
            mult,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.mult[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc -= self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                acc -= self.u2[i] * b[i + 2];
            }
            b[i] = acc / self.u0[i];
        }
    }
}

/// SplitMix64 generator used for reproducible inverse-iteration starts.
pub(crate) struct SplitMix64(pub(crate) u64);

impl SplitMix64 {
    pub(crate) fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub(crate) fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn free(n: usize, h: f64) -> SymTridiagonal {
        SymTridiagonal::new(vec![1.0 / (h * h); n], vec![-0.5 / (h * h); n - 1]).unwrap()
    }

    fn free_exact(n: usize, h: f64, k: usize) -> f64 {
        let half = libm::sin(0.5 * (k + 1) as f64 * PI / (n + 1) as f64);
        2.0 * half * half / (h * h)
    }

    #[test]
    fn two_by_two() {
        let t = SymTridiagonal::new(vec![0.0, 0.0], vec![-0.5]).unwrap();
        let ev = t.lowest_eigenvalues(2).unwrap();
        assert_relative_eq!(ev[0], -0.5, epsilon = 1e-15);
        assert_relative_eq!(ev[1], 0.5, epsilon = 1e-15);
        let v = t.eigenvector(-0.5).unwrap();
        assert_relative_eq!(v[0], core::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-12);
        assert_relative_eq!(v[1], core::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn decoupled_diagonal() {
        let t = SymTridiagonal::new(vec![2.5; 3], vec![0.0; 2]).unwrap();
        let ev = t.lowest_eigenvalues(3).unwrap();
        for e in ev {
            assert_relative_eq!(e, 2.5, epsilon = 1e-14);
        }
    }

    #[test]
    fn rejects_bad_requests() {
        let t = free(5, 1.0);
        assert!(t.lowest_eigenvalues(6).is_err());
        assert!(t.lowest_eigenvalues(0).is_err());
        assert!(t.eigenvalue(5).is_err());
        assert!(SymTridiagonal::new(vec![1.0; 3], vec![0.0; 3]).is_err());
    }

    #[test]
    fn free_particle_spectrum() {
        let (n, h) = (4000, 0.01);
        let t = free(n, h);
        let ev = t.lowest_eigenvalues(8).unwrap();
        for (k, e) in ev.iter().enumerate() {
            let floor = 10.0 * f64::EPSILON * 2.0 / (h * h);
            assert!((e - free_exact(n, h, k)).abs() < floor, "k={k}");
        }
        for w in ev.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_relative_eq!(t.eigenvalue(n - 1).unwrap(), free_exact(n, h, n - 1), max_relative = 1e-14);
    }

    #[test]
    fn eigenvectors_are_orthogonal_and_signed() {
        let t = free(2000, 0.05);
        let ev = t.lowest_eigenvalues(3).unwrap();
        let vs: std::vec::Vec<_> = ev.iter().map(|&e| t.eigenvector(e).unwrap()).collect();
        for i in 0..3 {
            assert!(vs[i][0] > 0.0);
            for j in 0..i {
                let dot: f64 = vs[i].iter().zip(&vs[j]).map(|(a, b)| a * b).sum();
                assert!(dot.abs() < 1e-10, "dot {i}{j} = {dot}");
            }
            let sign_changes = vs[i].windows(2).filter(|w| w[0] * w[1] < 0.0).count();
            assert_eq!(sign_changes, i);
        }
    }

    proptest! {
        #[test]
        fn sturm_counts_match_computed_spectrum(
            diag in proptest::collection::vec(-5.0f64..5.0, 2..40),
            seed in any::<u64>(),
        ) {
            let n = diag.len();
            let mut rng = SplitMix64(seed);
            let off: Vec<f64> = (0..n - 1).map(|_| rng.next_f64() * 2.0 + 0.05).collect();
            let t = SymTridiagonal::new(diag, off).unwrap();
            let ev = t.lowest_eigenvalues(n).unwrap();
            for w in ev.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            let trace: f64 = t.diag().iter().sum();
            prop_assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-10 * (1.0 + trace.abs()) * n as f64);
            for (k, &e) in ev.iter().enumerate() {
                let v = t.eigenvector(e).unwrap();
                let tv = t.matvec(&v);
                let res: f64 = tv.iter().zip(&v).map(|(a, b)| (a - e * b).powi(2)).sum::<f64>().sqrt();
                prop_assert!(res < 1e-10, "k={} res={}", k, res);
            }
        }
    }
}
