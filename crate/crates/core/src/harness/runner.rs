//! Run orchestration: owns the solver state, records diagnostics, handles
//! aborts, and writes CSV output.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use crate::caputo::HistoryBuffer;
use crate::diagnostics::{self, DiagnosticsRecord};
use crate::error::{Error, Result};
use crate::mesh::GridSpec;
use crate::schemes::{self, SchemeConfig, StepReport};
use crate::stability::cfl_max_dt;

use super::config::RunConfig;
use super::output;

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunOutcome {
    Completed,
    /// A NaN or infinity appeared at this level (instability).
    AbortedNonFinite {
        level: usize,
    },
    /// The implicit sweeps failed to converge at this level.
    AbortedSweepFailure {
        level: usize,
        residual: f64,
    },
    /// Strict CFL mode stopped an explicit run past its bound.
    AbortedCfl {
        level: usize,
    },
}

impl RunOutcome {
    pub fn is_completed(&self) -> bool {
        matches!(self, RunOutcome::Completed)
    }

    pub fn label(&self) -> &'static str {
        match self {
            RunOutcome::Completed => "completed",
            RunOutcome::AbortedNonFinite { .. } => "aborted_non_finite",
            RunOutcome::AbortedSweepFailure { .. } => "aborted_sweep_failure",
            RunOutcome::AbortedCfl { .. } => "aborted_cfl",
        }
    }

    /// Nonzero CLI exit code for aborted runs.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunOutcome::Completed => 0,
            RunOutcome::AbortedNonFinite { .. } | RunOutcome::AbortedCfl { .. } => 3,
            RunOutcome::AbortedSweepFailure { .. } => 4,
        }
    }
}

/// Stepping state shared by the run loop, the sweep driver, and the C API.
pub struct Solver {
    cfg: SchemeConfig,
    history: HistoryBuffer,
    strict_cfl: bool,
    cfl_violations: usize,
    max_sweeps: u32,
    last_report: Option<StepReport>,
}

impl Solver {
    pub fn new(cfg: SchemeConfig, initial: Vec<f64>, strict_cfl: bool) -> Result<Self> {
        cfg.validate()?;
        if initial.len() != cfg.grid.cells {
            return Err(Error::DimensionMismatch {
                expected: cfg.grid.cells,
                got: initial.len(),
            });
        }
        let history = HistoryBuffer::new(initial, cfg.dt)?;
        Ok(Self {
            cfg,
            history,
            strict_cfl,
            cfl_violations: 0,
            max_sweeps: 0,
            last_report: None,
        })
    }

    pub fn from_run_config(rc: &RunConfig) -> Result<Self> {
        rc.validate()?;
        let initial = rc.initial.sample(&rc.grid);
        let cfg = rc.scheme_config(&initial)?;
        Self::new(cfg, initial, rc.strict_cfl)
    }

    /// Advance one time level.
    pub fn step(&mut self) -> Result<StepReport> {
        let (next, report) = schemes::step(&self.history, &self.cfg)?;
        if !report.cfl_ok {
            self.cfl_violations += 1;
            if self.strict_cfl {
                let (min, max) = state_range(self.history.last());
                let order = self.cfg.scheme.cfl_order_factor().unwrap_or(1);
                let bound = cfl_max_dt(
                    self.cfg.alpha.as_constant().unwrap_or(1.0),
                    self.cfg.grid.h(),
                    self.cfg.flux.speed_sum(min, max),
                    order,
                )?;
                return Err(Error::CflExceeded {
                    level: report.level,
                    dt: self.cfg.dt,
                    tau_max: bound.tau_max,
                });
            }
        }
        self.history.push(next)?;
        self.max_sweeps = self.max_sweeps.max(report.sweeps_used);
        self.last_report = Some(report);
        Ok(report)
    }

    pub fn state(&self) -> &[f64] {
        self.history.last()
    }

    pub fn history(&self) -> &HistoryBuffer {
        &self.history
    }

    /// Completed time levels (0 right after construction).
    pub fn level(&self) -> usize {
        self.history.len() - 1
    }

    pub fn time(&self) -> f64 {
        self.level() as f64 * self.cfg.dt
    }

    pub fn grid(&self) -> &GridSpec {
        &self.cfg.grid
    }

    pub fn scheme_config(&self) -> &SchemeConfig {
        &self.cfg
    }

    pub fn cfl_violations(&self) -> usize {
        self.cfl_violations
    }

    pub fn max_sweeps(&self) -> u32 {
        self.max_sweeps
    }

    pub fn last_report(&self) -> Option<StepReport> {
        self.last_report
    }
}

fn state_range(state: &[f64]) -> (f64, f64) {
    state
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &u| {
            (lo.min(u), hi.max(u))
        })
}

/// Everything a finished (or aborted) run reports.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub config: RunConfig,
    pub records: Vec<DiagnosticsRecord>,
    pub xs: Vec<f64>,
    pub final_state: Vec<f64>,
    pub outcome: RunOutcome,
    pub steps_completed: usize,
    pub t_reached: f64,
    pub max_sweeps: u32,
    pub cfl_violations: usize,
    pub wall: Duration,
    /// Populated when the run wrote CSV output.
    pub out_paths: Vec<PathBuf>,
}

impl RunReport {
    pub fn initial_record(&self) -> &DiagnosticsRecord {
        &self.records[0]
    }

    pub fn final_record(&self) -> &DiagnosticsRecord {
        self.records
            .last()
            .expect("at least the initial record exists")
    }
}

/// Execute a configured run: time-step to `t_final`, record diagnostics at
/// the configured cadence, and (when `out_dir` is set) write the expanded
/// config, the final snapshot, and the diagnostics stream as CSV.
///
/// Instability aborts (NaN, sweep failure, strict-CFL stop) are reported via
/// [`RunReport::outcome`] rather than as errors, so stability experiments
/// can inspect partial data; configuration and I/O problems are errors.
pub fn run(rc: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    rc.validate()?;
    let mut solver = Solver::from_run_config(rc)?;
    let n_steps = rc.n_steps();
    let stride = rc.record_stride();

    let mut records = vec![diagnostics::record(0, 0.0, solver.state())];
    let mut outcome = RunOutcome::Completed;
    let mut warned_cfl = false;

    for step_idx in 1..=n_steps {
        match solver.step() {
            Ok(report) => {
                if !report.cfl_ok && !warned_cfl {
                    warned_cfl = true;
                    eprintln!(
                        "warning: run `{}`: dt = {} violates the CFL bound from level {} on",
                        rc.name, rc.dt, report.level
                    );
                }
                if step_idx % stride == 0 || step_idx == n_steps {
                    records.push(diagnostics::record(step_idx, solver.time(), solver.state()));
                }
            }
            Err(Error::NonFinite { level }) => {
                outcome = RunOutcome::AbortedNonFinite { level };
                break;
            }
            Err(Error::SweepsExhausted { residual, .. }) => {
                outcome = RunOutcome::AbortedSweepFailure {
                    level: solver.level() + 1,
                    residual,
                };
                break;
            }
            Err(Error::CflExceeded { level, .. }) => {
                outcome = RunOutcome::AbortedCfl { level };
                break;
            }
            Err(other) => return Err(other),
        }
    }

    let mut report = RunReport {
        xs: rc.grid.nodes().collect(),
        final_state: solver.state().to_vec(),
        records,
        outcome,
        steps_completed: solver.level(),
        t_reached: solver.time(),
        max_sweeps: solver.max_sweeps(),
        cfl_violations: solver.cfl_violations(),
        wall: start.elapsed(),
        out_paths: Vec::new(),
        config: rc.clone(),
    };

    if let Some(dir) = &rc.out_dir {
        let run_dir = dir.join(&rc.name);
        std::fs::create_dir_all(&run_dir)?;
        let cfg_path = run_dir.join("config.json");
        std::fs::write(&cfg_path, serde_json::to_string_pretty(rc)?)?;
        let snap_path = run_dir.join("snapshot_final.csv");
        output::write_snapshot(&snap_path, &report.xs, &report.final_state)?;
        let diag_path = run_dir.join("diagnostics.csv");
        output::write_diagnostics(&diag_path, &report.records)?;
        report.out_paths = vec![cfg_path, snap_path, diag_path];
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;

    #[test]
    fn riemann_preset_keeps_unit_total_variation() {
        let mut rc = presets::preset("advection-riemann").unwrap();
        rc.t_final = 0.05; // 10 steps are plenty for the invariant
        let report = run(&rc).unwrap();
        assert!(report.outcome.is_completed());
        for rec in &report.records {
            assert!(
                (rec.tv - 1.0).abs() < 1e-9,
                "tv = {} at level {}",
                rec.tv,
                rec.level
            );
            assert!(rec.max_val <= 2.0 + 1e-10 && rec.min_val >= 1.0 - 1e-10);
        }
    }

    #[test]
    fn diverging_dt_is_reported_not_crashed() {
        let mut rc = presets::preset("advection-riemann").unwrap();
        rc.dt = 0.0065;
        rc.t_final = 1.0;
        let report = run(&rc).unwrap();
        // Either it blows up to NaN or just grows; growth must be visible.
        let grew = report
            .records
            .iter()
            .any(|r| r.max_val.abs().max(r.min_val.abs()) > 20.0);
        assert!(
            grew || !report.outcome.is_completed(),
            "expected instability, outcome {:?}",
            report.outcome
        );
    }

    #[test]
    fn strict_cfl_aborts() {
        let mut rc = presets::preset("advection-riemann").unwrap();
        rc.dt = 0.0065;
        rc.strict_cfl = true;
        let report = run(&rc).unwrap();
        assert!(matches!(report.outcome, RunOutcome::AbortedCfl { .. }));
        assert_eq!(report.outcome.exit_code(), 3);
    }

    #[test]
    fn csv_outputs_are_bit_identical_across_runs() {
        let dir = tempfile::tempdir().unwrap();
        let mut rc = presets::preset("burgers-sine").unwrap();
        rc.t_final = 0.05;
        rc.out_dir = Some(dir.path().join("a"));
        let first = run(&rc).unwrap();
        rc.out_dir = Some(dir.path().join("b"));
        let second = run(&rc).unwrap();
        for (a, b) in first.out_paths.iter().zip(second.out_paths.iter()) {
            if a.extension().map(|e| e == "csv").unwrap_or(false) {
                assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
            }
        }
    }

    #[test]
    fn record_stride_caps_record_count() {
        let mut rc = presets::preset("advection-riemann-convergence").unwrap();
        assert_eq!(rc.n_steps(), 2000);
        assert_eq!(rc.record_stride(), 2);
        rc.record_every = Some(500);
        let report = run(&rc).unwrap();
        // levels 0, 500, 1000, 1500, 2000
        assert_eq!(report.records.len(), 5);
    }
}
