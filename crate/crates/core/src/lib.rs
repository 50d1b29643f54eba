//! Local minimizers of discrete pairwise interaction energies for
//! repulsive-attractive potentials, and diagnostics of the dimension of
//! their support.
//!
//! The crate is organized bottom-up:
//!
//! * [`potentials`]: the potential families, their derivatives, Laplacians,
//!   ball-averaged (approximate) Laplacians and repulsivity classes.
//! * [`energy`]: particle configurations, the discrete energy, forces and the
//!   generated potential `W * mu`.
//! * [`minimize`]: energy-descent particle dynamics (adaptive explicit Euler,
//!   RK4) and seeded initialization.
//! * [`diagnostics`]: correlation dimension, clustering, radial histograms,
//!   Riesz energies and Euler-Lagrange residuals.
//! * [`sweep`]: phase diagrams over `(gamma, alpha)` grids.
//! * [`cli`]: config parsing and the `swarmdim` command implementations.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod diagnostics;
pub mod energy;
mod error;
pub mod minimize;
pub mod potentials;
pub mod sweep;

pub use error::{Error, Result};

/// A point in `R^N`, `N <= 3`. Unused trailing coordinates are zero.
pub type Point = [f64; 3];

#[inline]
pub(crate) fn sub(a: &Point, b: &Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub(crate) fn norm(x: &Point) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

/// Formats a float with 17 significant digits.
pub(crate) fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}
