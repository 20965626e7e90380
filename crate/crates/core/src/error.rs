// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

use crate::model::StateLabel;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse state label `{0}`: {1}")]
    InvalidState(String, &'static str),

    #[error("requested {requested} eigenvalues of a {dim}x{dim} matrix")]
    IndexOutOfRange { requested: usize, dim: usize },

    #[error("state {label} is not bound (eigenvalue {energy} >= 0)")]
    Unbound { label: StateLabel, energy: f64 },

    #[error("state {label}: eigenvector has {found} nodes, expected {expected}")]
    NodeMismatch {
        label: StateLabel,
        expected: usize,
        found: usize,
    },

    #[error("not converged: {0}")]
    NotConverged(String),

    #[error("jet order exhausted: need {needed}, have {available}")]
    JetOrderExhausted { needed: usize, available: usize },

    #[error("reciprocal of a jet with zero constant term")]
    SingularJet,

    #[error("no exact solution table row {0} (rows 2..=9 are tabulated)")]
    UnsupportedRow(u32),

    #[error("no admissible positive beta root")]
    NoAdmissibleBeta,

    #[error("unsupported envelope basis power {0} (only -1 and 2)")]
    UnsupportedBasis(i32),

    #[error("no interior minimum found")]
    NoInteriorMinimum,

    #[error("shape function derivative vanishes at r = {0}")]
    FlatShape(f64),

    #[error("grid too coarse near the origin: {points} points in the fit window")]
    CoarseGrid { points: usize },

    #[error("beta = 0 is the Coulomb cusp regime; concavity needs a finite V(0)")]
    CoulombCusp,
}
