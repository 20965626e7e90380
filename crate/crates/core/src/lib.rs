// SPDX-License-Identifier: Apache-2.0

//! Spectral analysis of the soft-core Coulomb family
//!
//! ```text
//! V_q(r) = -Z / (r^q + β^q)^(1/q)
//! ```
//!
//! in hartree atomic units. The crate is `no_std` (it needs `alloc`) and
//! contains only pure numerics:
//!
//! - [`model`]: potential parameters, scaling law, state labels.
//! - [`tridiag`]: Sturm-sequence eigenvalues and inverse iteration for
//!   symmetric tridiagonal matrices.
//! - [`eigensolver`]: finite-difference radial solver with Richardson
//!   extrapolation and node-count state identification.
//! - [`jet`], [`aim`], [`exact`]: truncated Taylor arithmetic, the
//!   asymptotic iteration method and the exactly solvable `q = 1` cases.
//! - [`envelope`]: analytic lower/upper energy bounds.
//! - [`density`]: scaled electron density near the nucleus.
//! - [`crossing`]: level-crossing scans in β and the crossing-rule audit.
//!
//! IO, the command line and file formats live in the `softcoul` crate.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod aim;
pub mod crossing;
pub mod density;
pub mod eigensolver;
pub mod envelope;
mod error;
pub mod exact;
pub mod jet;
pub mod minimize;
pub mod model;
pub mod poly;
pub mod tridiag;

pub use error::{Error, Result};
pub use model::{PotentialParams, Power, StateLabel};
