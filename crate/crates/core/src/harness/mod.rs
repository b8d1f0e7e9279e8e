//! Experiment harness: configuration, presets, run/sweep orchestration, and
//! CSV emission. The `caplaw` binary is a thin CLI over this module.

pub mod config;
pub mod output;
pub mod presets;
pub mod runner;
pub mod sweep;

pub use config::{resolve_config, AlphaSpec, BoundaryKind, InitialData, RunConfig};
pub use runner::{run, RunOutcome, RunReport, Solver};
pub use sweep::{sweep, SweepAxis, SweepEntry, SweepReport};
