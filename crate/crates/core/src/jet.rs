// SPDX-License-Identifier: Apache-2.0

//! Truncated Taylor series ("jets") about a fixed point.
//!
//! A jet of order `M` stores `c_k = f^(k)(r₀)/k!` for `k = 0..=M`. Sums and
//! products keep the smaller order of their operands; differentiation
//! lowers the order by one.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TaylorJet {
    center: f64,
    coeffs: Vec<f64>,
}

impl TaylorJet {
    /// Jet from Taylor coefficients; `coeffs` must be non-empty.
    pub fn new(center: f64, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Self { center, coeffs }
    }

    pub fn constant(center: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { center, coeffs }
    }

    /// The coordinate `r` itself.
    pub fn variable(center: f64, order: usize) -> Self {
        let mut jet = Self::constant(center, center, order);
        if order > 0 {
            jet.coeffs[1] = 1.0;
        }
        jet
    }

    /// `1/(r + shift)`; needs `center + shift ≠ 0`.
    pub fn reciprocal_shifted(center: f64, shift: f64, order: usize) -> Result<Self> {
        let base = center + shift;
        if base == 0.0 {
            return Err(Error::SingularJet);
        }
        let ratio = -1.0 / base;
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = 1.0 / base;
        for _ in 0..=order {
            coeffs.push(c);
            c *= ratio;
        }
        Ok(Self { center, coeffs })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `f(r₀)`.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `f^(k)(r₀)`.
    pub fn derivative_at_center(&self, k: usize) -> Option<f64> {
        let c = *self.coeffs.get(k)?;
        Some(c * (1..=k).map(|j| j as f64).product::<f64>())
    }

    /// Truncated series evaluated at `r`.
    pub fn eval(&self, r: f64) -> f64 {
        let t = r - self.center;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.coeffs.len() < 2 {
            return Err(Error::JetOrderExhausted {
                needed: 1,
                available: 0,
            });
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| (k + 1) as f64 * c)
            .collect();
        Ok(Self {
            center: self.center,
            coeffs,
        })
    }

    /// `1/f`; needs `f(r₀) ≠ 0`.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == 0.0 {
            return Err(Error::SingularJet);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(1.0 / c0);
        for k in 1..self.coeffs.len() {
            let acc: f64 = (1..=k).map(|j| self.coeffs[j] * out[k - j]).sum();
            out.push(-acc / c0);
        }
        Ok(Self {
            center: self.center,
            coeffs: out,
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            center: self.center,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Copy cut down to order `order` (no-op if already lower).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self {
            center: self.center,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    fn check_center(&self, other: &Self) {
        assert!(
            self.center == other.center,
            "jets expanded about different points ({} vs {})",
            self.center,
            other.center
        );
    }
}

/// # Panics
/// When the operands have different centers.
impl Add for &TaylorJet {
    type Output = TaylorJet;

    fn add(self, rhs: &TaylorJet) -> TaylorJet {
        self.check_center(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        TaylorJet {
            center: self.center,
            coeffs,
        }
    }
}

/// # Panics
/// When the operands have different centers.
impl Sub for &TaylorJet {
    type Output = TaylorJet;

    fn sub(self, rhs: &TaylorJet) -> TaylorJet {
        self.check_center(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        TaylorJet {
            center: self.center,
            coeffs,
        }
    }
}

/// Cauchy product truncated to the smaller order.
///
/// # Panics
/// When the operands have different centers.
impl Mul for &TaylorJet {
    type Output = TaylorJet;

    fn mul(self, rhs: &TaylorJet) -> TaylorJet {
        self.check_center(rhs);
        let len = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| (0..=k).map(|i| self.coeffs[i] * rhs.coeffs[k - i]).sum())
            .collect();
        TaylorJet {
            center: self.center,
            coeffs,
        }
    }
}

impl Neg for &TaylorJet {
    type Output = TaylorJet;

    fn neg(self) -> TaylorJet {
        self.scale(-1.0)
    }
}
