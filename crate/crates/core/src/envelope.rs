// SPDX-License-Identifier: Apache-2.0

//! Envelope-method energy bounds.
//!
//! With a pure-power basis `sgn(p) r^p` the envelope bound reads
//!
//! ```text
//! E ≈ min_{r>0} [ P²/(2r²) + V(r) ]
//! ```
//!
//! `P = ν` for the hydrogenic basis (`p = -1`) gives a lower bound, since
//! `V_q` is a convex function of `-1/r` for every `q ≥ 1`. `P = 2ν - ℓ - ½`
//! for the oscillator basis (`p = 2`) gives an upper bound whenever `V` is
//! concave in `r²`, which holds for `q ≤ 2`. For `q = 3..6` the tangent
//! oscillator is only known not to cross `V` when the minimizing radius is
//! far enough out, `r̂/β ≥ threshold(q)`.

use alloc::vec::Vec;

use crate::minimize::{minimize_positive, Minimum};
use crate::{Error, PotentialParams, Power, Result, StateLabel};

const R_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeBound {
    pub kind: BoundKind,
    pub basis_power: i32,
    pub value: f64,
    pub r_hat: f64,
    /// Whether the bound is guaranteed. Only `p = 2` with `q > 2` can be
    /// `false`; the value is still reported.
    pub valid: bool,
}

/// `P_{νℓ}(p)` for the two supported bases.
pub fn p_coefficient(label: StateLabel, p: i32) -> Result<f64> {
    match p {
        -1 => Ok(label.nu as f64),
        2 => Ok(2.0 * label.nu as f64 - label.ell as f64 - 0.5),
        _ => Err(Error::UnsupportedBasis(p)),
    }
}

/// Smallest `r̂/β` at which the oscillator bound is guaranteed, for
/// `q = 3, 4, 5, 6`.
pub fn validity_threshold(q: Power) -> Option<f64> {
    match q {
        Power::Finite(3.0) => Some(0.958),
        Power::Finite(4.0) => Some(1.233),
        Power::Finite(5.0) => Some(1.356),
        Power::Finite(6.0) => Some(1.417),
        _ => None,
    }
}

fn oscillator_bound_valid(params: &PotentialParams, r_hat: f64) -> bool {
    if params.beta() == 0.0 {
        return true;
    }
    match params.q() {
        Power::Finite(q) if q <= 2.0 => true,
        q => validity_threshold(q).is_some_and(|t| r_hat / params.beta() >= t),
    }
}

/// `min_{r>0} [P²/(2r²) + V(r)]` with its minimizer.
pub fn envelope_minimum(params: &PotentialParams, p_value: f64) -> Result<Minimum> {
    let p2 = p_value * p_value;
    let s = params.beta().max(p2 / params.z());
    minimize_positive(
        |r| p2 / (2.0 * r * r) + params.potential(r),
        |r| -p2 / (r * r * r) + params.potential_derivative(r),
        1e-3 * s,
        1e3 * s,
        R_TOL,
    )
}

/// Lower (`p = -1`) or upper (`p = 2`) envelope bound on `E_{νℓ}`.
pub fn envelope_bound(params: &PotentialParams, label: StateLabel, p: i32) -> Result<EnvelopeBound> {
    let p_value = p_coefficient(label, p)?;
    let m = envelope_minimum(params, p_value)?;
    let (kind, valid) = if p == -1 {
        (BoundKind::Lower, true)
    } else {
        (BoundKind::Upper, oscillator_bound_valid(params, m.x))
    };
    Ok(EnvelopeBound {
        kind,
        basis_power: p,
        value: m.value,
        r_hat: m.x,
        valid,
    })
}

/// `min_{r>0} [1/(8r²) + V(r)]`, below every eigenvalue.
pub fn basic_lower_bound(params: &PotentialParams) -> Result<f64> {
    envelope_minimum(params, 0.5).map(|m| m.value)
}

/// Points `(Z(r), E(r))` of the bound curve for `V = Z f(r)`:
/// `Z = P²/(r³ f')`, `E = P² [1/(2r²) + f/(r³ f')]`.
pub fn parametric_curve<F, D>(f: F, df: D, p_value: f64, r_samples: &[f64]) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if !(p_value > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("P must be positive, got {p_value}")));
    }
    let p2 = p_value * p_value;
    r_samples
        .iter()
        .map(|&r| {
            let d = df(r);
            if d == 0.0 {
                return Err(Error::FlatShape(r));
            }
            let r3d = r * r * r * d;
            Ok((p2 / r3d, p2 * (0.5 / (r * r) + f(r) / r3d)))
        })
        .collect()
}

/// [`parametric_curve`] for the shape of `V_q` with the given `β` and `q`
/// (the charge of `params` is ignored).
pub fn potential_curve(params: &PotentialParams, p_value: f64, r_samples: &[f64]) -> Result<Vec<(f64, f64)>> {
    let unit = params.with_z(1.0)?;
    parametric_curve(|r| unit.potential(r), |r| unit.potential_derivative(r), p_value, r_samples)
}
