// SPDX-License-Identifier: Apache-2.0

//! Potential family, scaling law and state labels.
//!
//! All quantities are in hartree atomic units (`m = ħ = e = 1`): lengths in
//! bohr, energies in hartree.

use alloc::format;
use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Power parameter `q` of the family. `Infinite` is the `q → ∞` limit, a
/// flat well of depth `Z/β` inside `β` joined to the bare Coulomb tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Power {
    Finite(f64),
    Infinite,
}

impl Power {
    pub fn is_finite(self) -> bool {
        matches!(self, Power::Finite(_))
    }

    /// Numeric value, `f64::INFINITY` for the limit.
    pub fn value(self) -> f64 {
        match self {
            Power::Finite(q) => q,
            Power::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Power::Finite(q) => write!(f, "{q}"),
            Power::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Power {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Power::Infinite);
        }
        let q: f64 = t
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("q = `{t}` is not a number")))?;
        if q.is_infinite() && q > 0.0 {
            return Ok(Power::Infinite);
        }
        Ok(Power::Finite(q))
    }
}

/// One member `(Z, β, q)` of the soft-core Coulomb family.
///
/// Invariants: `Z > 0`, `β ≥ 0`, `q ≥ 1` (or infinite). `β = 0` is the bare
/// Coulomb potential for every `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialParams {
    z: f64,
    beta: f64,
    q: Power,
}

impl PotentialParams {
    pub fn new(z: f64, beta: f64, q: Power) -> Result<Self> {
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::InvalidParameter(format!("Z must be positive, got {z}")));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must be non-negative, got {beta}"
            )));
        }
        if let Power::Finite(qv) = q {
            if !(qv.is_finite() && qv >= 1.0) {
                return Err(Error::InvalidParameter(format!("q must be >= 1, got {qv}")));
            }
        }
        Ok(Self { z, beta, q })
    }

    /// Shorthand for a finite power.
    pub fn finite(z: f64, beta: f64, q: f64) -> Result<Self> {
        Self::new(z, beta, Power::Finite(q))
    }

    pub fn coulomb(z: f64) -> Result<Self> {
        Self::new(z, 0.0, Power::Finite(1.0))
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn q(&self) -> Power {
        self.q
    }

    pub fn is_coulomb(&self) -> bool {
        self.beta == 0.0
    }

    pub fn with_z(self, z: f64) -> Result<Self> {
        Self::new(z, self.beta, self.q)
    }

    pub fn with_beta(self, beta: f64) -> Result<Self> {
        Self::new(self.z, beta, self.q)
    }

    pub fn with_q(self, q: Power) -> Result<Self> {
        Self::new(self.z, self.beta, q)
    }

    /// `V(r)`. Finite at the origin (`-Z/β`) unless `β = 0`.
    ///
    /// Evaluated as `-Z / (m (1 + t^q)^(1/q))` with `m = max(r, β)`,
    /// `t = min(r, β)/m`, so large `q` cannot overflow.
    pub fn potential(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        if self.beta == 0.0 {
            return -self.z / r;
        }
        let (m, t) = split(r, self.beta);
        match self.q {
            Power::Infinite => -self.z / m,
            Power::Finite(q) => {
                let norm = libm::exp(libm::log1p(libm::pow(t, q)) / q);
                -self.z / (m * norm)
            }
        }
    }

    /// `dV/dr = Z r^(q-1) (r^q + β^q)^(-1/q-1)`, always `≥ 0`.
    ///
    /// For `q = ∞` the one-sided value is used at the kink: 0 below `β`,
    /// `Z/r²` from `β` on.
    pub fn potential_derivative(&self, r: f64) -> f64 {
        if self.beta == 0.0 {
            return self.z / (r * r);
        }
        match self.q {
            Power::Infinite => {
                if r < self.beta {
                    0.0
                } else {
                    self.z / (r * r)
                }
            }
            Power::Finite(q) => {
                let (m, t) = split(r, self.beta);
                let tq = libm::pow(t, q);
                let tail = libm::exp(-(1.0 + 1.0 / q) * libm::log1p(tq));
                if r >= self.beta {
                    self.z * tail / (r * r)
                } else {
                    self.z * libm::pow(t, q - 1.0) * tail / (m * m)
                }
            }
        }
    }

    /// Depth of the well, `min_r V(r) = V(0) = -Z/β` (`-∞` for Coulomb).
    pub fn well_bottom(&self) -> f64 {
        if self.beta == 0.0 {
            f64::NEG_INFINITY
        } else {
            -self.z / self.beta
        }
    }

    /// Coordinate scaling `r → σr`: returns `(σZ, β/σ, q)` and the energy
    /// multiplier `1/σ²`, so that `E(Z,β,q) = E(σZ, β/σ, q) / σ²`.
    pub fn scaled(&self, sigma: f64) -> Result<(Self, f64)> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be positive, got {sigma}"
            )));
        }
        let p = Self::new(self.z * sigma, self.beta / sigma, self.q)?;
        Ok((p, 1.0 / (sigma * sigma)))
    }
}

fn split(r: f64, beta: f64) -> (f64, f64) {
    if r >= beta {
        (r, beta / r)
    } else {
        (beta, r / beta)
    }
}

impl fmt::Display for PotentialParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z={} beta={} q={}", self.z, self.beta, self.q)
    }
}

const LETTERS: [char; 11] = ['s', 'p', 'd', 'f', 'g', 'h', 'i', 'k', 'l', 'm', 'n'];

/// Bound state `(ν, ℓ)` with `ν = n + ℓ`, `n` = radial nodes + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateLabel {
    pub nu: u32,
    pub ell: u32,
}

impl StateLabel {
    pub fn new(nu: u32, ell: u32) -> Result<Self> {
        if nu < ell + 1 {
            return Err(Error::InvalidState(
                format!("nu={nu} ell={ell}"),
                "nu must be at least ell + 1",
            ));
        }
        Ok(Self { nu, ell })
    }

    /// Radial nodes of the reduced wavefunction, `ν − ℓ − 1`.
    pub fn nodes(&self) -> usize {
        (self.nu - self.ell - 1) as usize
    }

    /// Zero-based position of the state in its `ℓ` block.
    pub fn block_index(&self) -> usize {
        self.nodes()
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match LETTERS.get(self.ell as usize) {
            Some(c) => write!(f, "{}{}", self.nu, c),
            None => write!(f, "{}[l={}]", self.nu, self.ell),
        }
    }
}

impl FromStr for StateLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = |why| Error::InvalidState(t.to_string(), why);
        let letter = t.chars().last().ok_or_else(|| bad("empty label"))?;
        let digits = &t[..t.len() - letter.len_utf8()];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected an integer followed by an orbital letter"));
        }
        let nu: u32 = digits.parse().map_err(|_| bad("principal number out of range"))?;
        let ell = LETTERS
            .iter()
            .position(|&c| c == letter.to_ascii_lowercase())
            .ok_or_else(|| bad("unknown orbital letter"))? as u32;
        if nu < ell + 1 {
            return Err(bad("nu must be at least ell + 1"));
        }
        Ok(Self { nu, ell })
    }
}
