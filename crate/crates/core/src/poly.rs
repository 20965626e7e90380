// SPDX-License-Identifier: Apache-2.0

//! Dense real polynomials and real-root isolation.

use alloc::vec;
use alloc::vec::Vec;

/// `Σ cᵢ xⁱ`, coefficients in ascending order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.degree()]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::new(vec![0.0]);
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| (i + 1) as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + other.coeffs.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }

    /// Upper bound on the modulus of every root (Cauchy).
    pub fn root_bound(&self) -> f64 {
        let lead = self.leading().abs();
        1.0 + self.coeffs[..self.degree()]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs() / lead))
    }

    /// Distinct real roots in `[lo, hi]`, ascending, bisected to a
    /// relative width of a few ulps.
    ///
    /// Roots are separated by the critical points (roots of `p'`, found
    /// recursively), between which `p` is monotone. Roots of even
    /// multiplicity that do not change sign are reported only when `p`
    /// evaluates to exactly zero there.
    pub fn real_roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        if self.is_zero() || self.degree() == 0 || !(lo <= hi) {
            return Vec::new();
        }
        let mut knots = vec![lo];
        knots.extend(self.derivative().real_roots_in(lo, hi).into_iter().filter(|&x| x > lo && x < hi));
        knots.push(hi);
        let mut roots: Vec<f64> = Vec::new();
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            let root = if fa == 0.0 {
                Some(a)
            } else if fb == 0.0 {
                Some(b)
            } else if fa.signum() != fb.signum() {
                Some(self.bisect(a, b, fa))
            } else {
                None
            };
            if let Some(r) = root {
                if roots.last().is_none_or(|&last| r > last) {
                    roots.push(r);
                }
            }
        }
        roots
    }

    /// Distinct positive real roots, ascending.
    pub fn positive_roots(&self) -> Vec<f64> {
        if self.is_zero() || self.degree() == 0 {
            return Vec::new();
        }
        self.real_roots_in(0.0, self.root_bound())
            .into_iter()
            .filter(|&r| r > 0.0)
            .collect()
    }

    fn bisect(&self, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
        loop {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                return mid;
            }
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
    }

    /// Number of distinct real roots in `(lo, hi]` from a Sturm sequence.
    ///
    /// The remainders are rescaled at every step; reliable for the modest
    /// degrees used here, and used to cross-check [`Self::real_roots_in`].
    pub fn sturm_count(&self, lo: f64, hi: f64) -> usize {
        let chain = self.sturm_chain();
        sign_changes(&chain, lo).saturating_sub(sign_changes(&chain, hi))
    }

    fn sturm_chain(&self) -> Vec<Polynomial> {
        let normalize = |p: Polynomial| {
            let m = p.max_abs_coeff();
            if m > 0.0 {
                p.scale(1.0 / m)
            } else {
                p
            }
        };
        let mut chain = vec![normalize(self.clone())];
        if self.degree() == 0 {
            return chain;
        }
        chain.push(normalize(self.derivative()));
        loop {
            let n = chain.len();
            let rem = remainder(&chain[n - 2], &chain[n - 1]);
            if rem.is_zero() || rem.max_abs_coeff() < 1e-13 {
                break;
            }
            chain.push(normalize(rem.scale(-1.0)));
            if chain.last().is_none_or(|p| p.degree() == 0) {
                break;
            }
        }
        chain
    }
}

fn sign_changes(chain: &[Polynomial], x: f64) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for p in chain {
        let v = p.eval(x);
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last {
            count += 1;
        }
        last = v.signum();
    }
    count
}

fn remainder(num: &Polynomial, den: &Polynomial) -> Polynomial {
    let mut r = num.coeffs.clone();
    let d = den.degree();
    let lead = den.leading();
    while r.len() > d && r.len() > 1 {
        let shift = r.len() - 1 - d;
        let factor = r[r.len() - 1] / lead;
        for (i, c) in den.coeffs.iter().enumerate() {
            r[shift + i] -= factor * c;
        }
        r.pop();
    }
    Polynomial::new(r)
}
