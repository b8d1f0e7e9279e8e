//! Finite-volume solvers for one-dimensional scalar conservation laws with
//! Caputo time-fractional derivatives,
//!
//! ```text
//! d^a/dt^a u + d/dx f(u) = 0,   a in (0, 1],
//! ```
//!
//! where `d^a/dt^a` is the Caputo derivative, discretized by the L1 scheme.
//! The memory term turns every time step into a convex combination of the
//! full solution history, which damps and spreads the classical dynamics.
//!
//! The crate provides:
//!
//! - [`caputo`]: L1 convolution weights and the discrete fractional operator;
//! - [`specialfn`]: Mittag-Leffler function and exact fractional-ODE solutions;
//! - [`flux`]: monotone flux splittings (linear advection, Burgers) and limiters;
//! - [`mesh`]: uniform grids, boundary treatments, space-time alpha fields;
//! - [`schemes`]: fractional backward Euler, explicit first-order upwind,
//!   MUSCL, and implicit upwind with nonlinear Gauss-Seidel sweeping;
//! - [`stability`]: modified CFL bounds and stability-region boundary loci;
//! - [`diagnostics`]: total variation, norms, energy ledger, convergence fits;
//! - [`harness`]: experiment presets, run/sweep orchestration, CSV output.
//!
//! The `caplaw` binary exposes the harness as a CLI (`run`, `sweep`, `locus`).

pub mod caputo;
pub mod diagnostics;
pub mod error;
pub mod flux;
pub mod harness;
pub mod mesh;
pub mod schemes;
pub mod specialfn;
pub mod stability;

pub use error::{Error, Result};
