// SPDX-License-Identifier: Apache-2.0

//! Closed-form states of the `q = 1` potential.
//!
//! For `V = -Z/(r + β)` the ansatz `ψ = r^{ℓ+1} e^{-ar} f(r)` with `f` a
//! polynomial of degree `k - 1` and `a = Z/(ℓ+k)` solves the radial equation
//! exactly at energy `-Z²/(2(ℓ+k)²)`, but only for the finitely many `β`
//! that are positive roots of a row-`k` condition polynomial.

use alloc::vec;
use alloc::vec::Vec;
use libm::{exp, pow};

use crate::poly::Polynomial;
use crate::{Error, PotentialParams, Result, StateLabel};

/// Rows with a tabulated condition polynomial.
pub const ROWS: core::ops::RangeInclusive<u32> = 2..=9;

/// Coefficients of the row-`k` condition in powers of `x = Zβ`, ascending.
fn row_coefficients(k: u32, l: f64) -> Option<Vec<f64>> {
    let s = |n: f64| l + n;
    let t = |n: f64| 2.0 * l + n;
    let p = |c: &[f64]| c.iter().fold(0.0, |acc, c| acc * l + c);
    let rising = |from: u32, to: u32| (from..=to).map(|n| s(n as f64)).product::<f64>();
    let sk = |k: f64, e: i32| pow(s(k), e as f64);
    let c = match k {
        2 => vec![s(2.0), -1.0],
        3 => vec![t(3.0) * sk(3.0, 2), -3.0 * s(2.0) * s(3.0), s(2.0)],
        4 => vec![
            3.0 * s(2.0) * t(3.0) * sk(4.0, 3),
            -p(&[11.0, 50.0, 54.0]) * sk(4.0, 2),
            6.0 * rising(2, 4),
            -rising(2, 3),
        ],
        5 => vec![
            6.0 * t(5.0) * t(3.0) * s(2.0) * sk(5.0, 4),
            -p(&[50.0, 381.0, 925.0, 720.0]) * sk(5.0, 3),
            p(&[35.0, 300.0, 823.0, 720.0]) * sk(5.0, 2),
            -10.0 * rising(2, 5),
            rising(2, 4),
        ],
        6 => vec![
            30.0 * t(5.0) * t(3.0) * s(3.0) * s(2.0) * sk(6.0, 5),
            -p(&[274.0, 3073.0, 12411.0, 21492.0, 13500.0]) * sk(6.0, 4),
            3.0 * p(&[75.0, 952.0, 4359.0, 8522.0, 6000.0]) * sk(6.0, 3),
            -p(&[85.0, 1155.0, 5678.0, 11928.0, 9000.0]) * sk(6.0, 2),
            15.0 * rising(2, 6),
            -rising(2, 5),
        ],
        7 => vec![
            90.0 * t(7.0) * t(5.0) * t(3.0) * s(3.0) * s(2.0) * sk(7.0, 6),
            -9.0 * p(&[196.0, 3004.0, 17753.0, 50746.0, 70301.0, 37800.0]) * sk(7.0, 5),
            p(&[1624.0, 28182.0, 188607.0, 608332.0, 945783.0, 567000.0]) * sk(7.0, 4),
            -3.0 * p(&[245.0, 4592.0, 33271.0, 116224.0, 195300.0, 126000.0]) * sk(7.0, 3),
            p(&[175.0, 3430.0, 26033.0, 95354.0, 167976.0, 113400.0]) * sk(7.0, 2),
            -21.0 * rising(2, 7),
            rising(2, 6),
        ],
        8 => vec![
            630.0 * t(7.0) * t(5.0) * t(3.0) * s(4.0) * s(3.0) * s(2.0) * sk(8.0, 7),
            -9.0 * p(&[1452.0, 28968.0, 232875.0, 968195.0, 2199048.0, 2589112.0, 1234800.0]) * sk(8.0, 6),
            2.0 * p(&[6566.0, 148023.0, 1343681.0, 6287868.0, 16004408.0, 21011364.0, 11113200.0])
                * sk(8.0, 5),
            -p(&[6769.0, 165501.0, 1632238.0, 8299620.0, 22916602.0, 32533488.0, 18522000.0]) * sk(8.0, 4),
            2.0 * p(&[980.0, 25263.0, 263144.0, 1414449.0, 4127804.0, 6184116.0, 3704400.0]) * sk(8.0, 3),
            -2.0 * p(&[161.0, 4284.0, 46109.0, 256284.0, 773558.0, 1198080.0, 740880.0]) * sk(8.0, 2),
            28.0 * rising(2, 8),
            -rising(2, 7),
        ],
        9 => vec![
            2520.0 * t(9.0) * t(7.0) * t(5.0) * t(3.0) * s(4.0) * s(3.0) * s(2.0) * sk(9.0, 8),
            -18.0
                * p(&[6088.0, 152716.0, 1592078.0, 8960617.0, 29441156.0, 56502567.0, 58655178.0, 25401600.0])
                * sk(9.0, 7),
            p(&[
                118124.0,
                3338080.0,
                39154679.0,
                247223313.0,
                907897077.0,
                1939695507.0,
                2232161820.0,
                1066867200.0,
            ]) * sk(9.0, 6),
            -18.0
                * p(&[3738.0, 114755.0, 1464128.0, 10054742.0, 40105738.0, 92835203.0, 115350696.0, 59270400.0])
                * sk(9.0, 5),
            3.0 * p(&[
                7483.0,
                243355.0,
                3294188.0,
                24020450.0,
                101717325.0,
                249667695.0,
                328201704.0,
                177811200.0,
            ]) * sk(9.0, 4),
            -18.0
                * p(&[252.0, 8519.0, 120015.0, 911495.0, 4021353.0, 10279346.0, 14054940.0, 7902720.0])
                * sk(9.0, 3),
            6.0 * p(&[91.0, 3150.0, 45472.0, 354060.0, 1601869.0, 4198770.0, 5883828.0, 3386880.0]) * sk(9.0, 2),
            -36.0 * rising(2, 9),
            rising(2, 8),
        ],
        _ => return None,
    };
    Some(c)
}

/// Condition polynomial of row `k` in `β` for angular momentum `ℓ` and
/// charge `Z`, ascending in `β`.
pub fn condition_polynomial(k: u32, ell: u32, z: f64) -> Result<Polynomial> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("Z must be positive and finite, got {z}")));
    }
    let coeffs = row_coefficients(k, ell as f64).ok_or(Error::UnsupportedRow(k))?;
    let mut zj = 1.0;
    Ok(Polynomial::new(
        coeffs
            .into_iter()
            .map(|c| {
                let v = c * zj;
                zj *= z;
                v
            })
            .collect(),
    ))
}

/// The solvable points of one row.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCase {
    pub row: u32,
    pub ell: u32,
    pub z: f64,
    pub polynomial: Polynomial,
    /// Admissible `β`, ascending.
    pub betas: Vec<f64>,
    pub energy: f64,
}

impl ExactCase {
    /// `e^{-ar}` decay rate `Z/(ℓ+k)`.
    pub fn decay(&self) -> f64 {
        self.z / (self.ell + self.row) as f64
    }

    pub fn wavefunction(&self, beta: f64) -> Result<ExactWavefunction> {
        exact_wavefunction(self, beta)
    }
}

/// Roots and energy of row `k`. Errors with [`Error::NoAdmissibleBeta`] when
/// the row has no positive root.
pub fn exact_case(k: u32, ell: u32, z: f64) -> Result<ExactCase> {
    let polynomial = condition_polynomial(k, ell, z)?;
    let betas = polynomial.positive_roots();
    if betas.is_empty() {
        return Err(Error::NoAdmissibleBeta);
    }
    let n = (ell + k) as f64;
    Ok(ExactCase {
        row: k,
        ell,
        z,
        polynomial,
        betas,
        energy: -z * z / (2.0 * n * n),
    })
}

/// `ψ(r) = r^{ℓ+1} e^{-ar} f(r)` at one admissible `β` (unnormalized,
/// `f(0) = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct ExactWavefunction {
    pub params: PotentialParams,
    pub label: StateLabel,
    pub energy: f64,
    pub decay: f64,
    pub polynomial: Polynomial,
    /// Radii where `f` changes sign, ascending.
    pub nodes: Vec<f64>,
}

/// Coefficients of `f` from the recurrence run downward from `c_k = 0`,
/// `c_{k-1} = 1`, then scaled to `c_0 = 1`.
///
/// The terminating solution is the minimal one, so the upward recurrence
/// loses digits near the top; the downward direction does not.
fn terminating_series(case: &ExactCase, beta: f64) -> Vec<f64> {
    let k = case.row as usize;
    let l = case.ell as f64;
    let z = case.z;
    let a = case.decay();
    let mut c = vec![0.0; k + 1];
    c[k - 1] = 1.0;
    for m in (1..k).rev() {
        let mf = m as f64;
        c[m - 1] = (beta * (mf + 1.0) * (mf + 2.0 * l + 2.0) * c[m + 1]
            - (2.0 * a * beta * (mf + l + 1.0) - mf * (mf + 2.0 * l + 1.0)) * c[m])
            / (2.0 * (a * (mf + l) - z));
    }
    c.truncate(k);
    let c0 = c[0];
    c.iter().map(|x| x / c0).collect()
}

/// Closed-form wavefunction of `case` at `beta`.
///
/// `beta` is normally one of `case.betas`. The series for `f` is built from
/// its three-term recurrence; when `beta` is not a root the truncation is not
/// an eigenfunction and [`ExactWavefunction::max_residual`] shows it.
pub fn exact_wavefunction(case: &ExactCase, beta: f64) -> Result<ExactWavefunction> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("beta must be positive, got {beta}")));
    }
    let c = terminating_series(case, beta);
    let polynomial = Polynomial::new(c);
    let nodes = polynomial.positive_roots();
    let label = StateLabel::new(case.ell + 1 + nodes.len() as u32, case.ell)?;
    Ok(ExactWavefunction {
        params: PotentialParams::finite(case.z, beta, 1.0)?,
        label,
        energy: case.energy,
        decay: case.decay(),
        polynomial,
        nodes,
    })
}

impl ExactWavefunction {
    pub fn psi(&self, r: f64) -> f64 {
        pow(r, (self.label.ell + 1) as f64) * exp(-self.decay * r) * self.polynomial.eval(r)
    }

    /// `-ψ''/2 + (ℓ(ℓ+1)/(2r²) + V - E)ψ`, evaluated analytically.
    pub fn residual(&self, r: f64) -> f64 {
        let l = self.label.ell as f64;
        let g = pow(r, l + 1.0) * exp(-self.decay * r);
        let u = (l + 1.0) / r - self.decay;
        let g1 = g * u;
        let g2 = g * (u * u - (l + 1.0) / (r * r));
        let d1 = self.polynomial.derivative();
        let d2 = d1.derivative();
        let (f, f1, f2) = (self.polynomial.eval(r), d1.eval(r), d2.eval(r));
        let psi = g * f;
        let psi2 = g2 * f + 2.0 * g1 * f1 + g * f2;
        -0.5 * psi2 + (l * (l + 1.0) / (2.0 * r * r) + self.params.potential(r) - self.energy) * psi
    }

    /// Largest `|residual|` over `n` uniform points on `(0, r_max]`, relative
    /// to the largest `|ψ|` seen.
    pub fn max_residual(&self, r_max: f64, n: usize) -> f64 {
        let (mut res, mut amp) = (0.0f64, 0.0f64);
        for i in 1..=n {
            let r = r_max * i as f64 / n as f64;
            res = res.max(self.residual(r).abs());
            amp = amp.max(self.psi(r).abs());
        }
        res / amp
    }
}
