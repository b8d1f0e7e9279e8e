//! Parameter sweeps: independent runs along one axis (`dt`, `dx`, `alpha`),
//! executed in parallel, aggregated into a convergence/stability table.
//!
//! Errors for `dt`/`dx` sweeps are measured against a fine reference run by
//! self-convergence (reference step or spacing = finest / 8; grids must nest,
//! which power-of-two refinements of the presets guarantee). An `alpha`
//! sweep reports each profile's distance to the largest-alpha member.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagnostics::{convergence_slope, l1_distance};
use crate::error::{Error, Result};
use crate::harness::output::fmt17;

use super::config::{AlphaSpec, RunConfig};
use super::runner::{run, RunReport};

/// TV slack used to call a run "stable" in sweep tables.
pub const TV_BOUND_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Dt,
    Dx,
    Alpha,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Dt => "dt",
            SweepAxis::Dx => "dx",
            SweepAxis::Alpha => "alpha",
        }
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dt" => Ok(SweepAxis::Dt),
            "dx" => Ok(SweepAxis::Dx),
            "alpha" => Ok(SweepAxis::Alpha),
            other => Err(Error::InvalidConfig(format!(
                "unknown sweep axis `{other}` (expected dt, dx, or alpha)"
            ))),
        }
    }
}

/// One member run of a sweep.
#[derive(Debug)]
pub struct SweepEntry {
    pub value: f64,
    pub report: RunReport,
    /// l1 error against the sweep reference (see module docs).
    pub l1_error: Option<f64>,
    /// Completed with `TV <= TV0 + TV_BOUND_SLACK` at every recorded level.
    pub tv_bounded: bool,
    /// Max-norm growth factor over the run, relative to the initial data.
    pub max_growth: f64,
}

#[derive(Debug)]
pub struct SweepReport {
    pub axis: SweepAxis,
    /// Sorted by ascending axis value.
    pub entries: Vec<SweepEntry>,
    /// The fine reference run (`dt`/`dx` axes only).
    pub reference: Option<RunReport>,
    /// Least-squares order fit over the stable entries, when >= 3 exist.
    pub slope: Option<f64>,
    /// Adjacent (stable, unstable) pair bracketing the empirical stability
    /// threshold (`dt` axis).
    pub threshold: Option<(f64, f64)>,
    pub out_paths: Vec<PathBuf>,
}

#[derive(Serialize)]
struct SweepMeta<'a> {
    axis: &'a str,
    values: &'a [f64],
    slope: Option<f64>,
    threshold: Option<(f64, f64)>,
    reference_value: Option<f64>,
}

fn configure(base: &RunConfig, axis: SweepAxis, value: f64) -> Result<RunConfig> {
    if !(value > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "sweep values must be positive, got {value}"
        )));
    }
    let mut rc = base.clone();
    rc.name = format!("{}-{}{}", base.name, axis.name(), value);
    match axis {
        SweepAxis::Dt => rc.dt = value,
        SweepAxis::Dx => {
            let span = rc.grid.x_right - rc.grid.x_left;
            let intervals = span / value;
            if (intervals - intervals.round()).abs() > 1e-6 * intervals {
                return Err(Error::InvalidConfig(format!(
                    "dx = {value} does not tile the domain of width {span}"
                )));
            }
            rc.grid.cells = intervals.round() as usize + 1;
        }
        SweepAxis::Alpha => {
            crate::specialfn::check_alpha(value)?;
            rc.alpha = AlphaSpec::Constant { value };
        }
    }
    Ok(rc)
}

fn tv_bounded(report: &RunReport) -> bool {
    let tv0 = report.initial_record().tv;
    report.outcome.is_completed() && report.records.iter().all(|r| r.tv <= tv0 + TV_BOUND_SLACK)
}

fn max_growth(report: &RunReport) -> f64 {
    let initial = report.initial_record();
    let scale = initial
        .max_val
        .abs()
        .max(initial.min_val.abs())
        .max(f64::MIN_POSITIVE);
    report
        .records
        .iter()
        .map(|r| r.max_val.abs().max(r.min_val.abs()) / scale)
        .fold(0.0, f64::max)
}

/// Run the sweep. Member runs execute concurrently; each owns its state and
/// its own output files under `<out_dir>/sweep-<axis>/`.
pub fn sweep(base: &RunConfig, axis: SweepAxis, values: &[f64]) -> Result<SweepReport> {
    if values.is_empty() {
        return Err(Error::InvalidConfig(
            "sweep needs at least one value".into(),
        ));
    }
    let mut values: Vec<f64> = values.to_vec();
    values.sort_by(|a, b| a.partial_cmp(b).expect("sweep values must not be NaN"));
    values.dedup();

    let sweep_dir = base
        .out_dir
        .as_ref()
        .map(|d| d.join(format!("sweep-{}", axis.name())));

    let mut configs = Vec::with_capacity(values.len());
    for &v in &values {
        let mut rc = configure(base, axis, v)?;
        rc.out_dir = sweep_dir.clone();
        configs.push(rc);
    }

    // Fine reference for error columns: dt or dx = finest / 8.
    let reference_cfg = match axis {
        SweepAxis::Dt | SweepAxis::Dx => {
            let mut rc = configure(base, axis, values[0] / 8.0)?;
            rc.name = format!("{}-{}ref", base.name, axis.name());
            rc.out_dir = sweep_dir.clone();
            Some(rc)
        }
        SweepAxis::Alpha => None,
    };

    let mut jobs = configs;
    if let Some(rc) = reference_cfg {
        jobs.push(rc);
    }
    let mut reports: Vec<RunReport> = jobs.par_iter().map(run).collect::<Result<Vec<_>>>()?;
    let reference = match axis {
        SweepAxis::Dt | SweepAxis::Dx => Some(reports.pop().expect("reference job present")),
        SweepAxis::Alpha => None,
    };

    // Alpha sweeps compare against the largest-alpha profile.
    let alpha_reference_state = match axis {
        SweepAxis::Alpha => Some(reports.last().expect("nonempty").final_state.clone()),
        _ => None,
    };

    let mut entries = Vec::with_capacity(reports.len());
    for (value, report) in values.iter().copied().zip(reports) {
        let l1_error = entry_error(
            axis,
            value,
            &report,
            reference.as_ref(),
            alpha_reference_state.as_deref(),
        )?;
        entries.push(SweepEntry {
            value,
            tv_bounded: tv_bounded(&report),
            max_growth: max_growth(&report),
            l1_error,
            report,
        });
    }

    let fit_points: Vec<(f64, f64)> = entries
        .iter()
        .filter(|e| e.tv_bounded)
        .filter_map(|e| {
            e.l1_error
                .filter(|err| *err > 0.0)
                .map(|err| (e.value, err))
        })
        .collect();
    let slope = if matches!(axis, SweepAxis::Alpha) || fit_points.len() < 3 {
        None
    } else {
        Some(convergence_slope(&fit_points)?)
    };

    let threshold = match axis {
        SweepAxis::Dt => entries
            .windows(2)
            .find(|w| w[0].tv_bounded && !w[1].tv_bounded)
            .map(|w| (w[0].value, w[1].value)),
        _ => None,
    };

    let mut out_paths = Vec::new();
    if let Some(dir) = &sweep_dir {
        std::fs::create_dir_all(dir)?;
        let summary = dir.join("summary.csv");
        let mut s = String::from("value,l1_error,tv_initial,tv_final,max_growth,outcome\n");
        for e in &entries {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                fmt17(e.value),
                e.l1_error.map(fmt17).unwrap_or_default(),
                fmt17(e.report.initial_record().tv),
                fmt17(e.report.final_record().tv),
                fmt17(e.max_growth),
                e.report.outcome.label(),
            );
        }
        std::fs::write(&summary, s)?;
        let meta = dir.join("sweep_meta.json");
        let meta_doc = SweepMeta {
            axis: axis.name(),
            values: &values,
            slope,
            threshold,
            reference_value: match axis {
                SweepAxis::Dt | SweepAxis::Dx => Some(values[0] / 8.0),
                SweepAxis::Alpha => None,
            },
        };
        std::fs::write(&meta, serde_json::to_string_pretty(&meta_doc)?)?;
        out_paths.push(summary);
        out_paths.push(meta);
    }

    Ok(SweepReport {
        axis,
        entries,
        reference,
        slope,
        threshold,
        out_paths,
    })
}

fn entry_error(
    axis: SweepAxis,
    value: f64,
    report: &RunReport,
    reference: Option<&RunReport>,
    alpha_reference: Option<&[f64]>,
) -> Result<Option<f64>> {
    if !report.outcome.is_completed() {
        return Ok(None);
    }
    match axis {
        SweepAxis::Dt => {
            let reference = reference.expect("dt sweeps carry a reference");
            let h = report.config.grid.h();
            Ok(Some(
                h * l1_distance(&report.final_state, &reference.final_state)?,
            ))
        }
        SweepAxis::Dx => {
            let reference = reference.expect("dx sweeps carry a reference");
            let ref_h = reference.config.grid.h();
            let stride_f = value / ref_h;
            if (stride_f - stride_f.round()).abs() > 1e-6 {
                return Err(Error::InvalidConfig(format!(
                    "dx = {value} does not nest in the reference spacing {ref_h}"
                )));
            }
            let stride = stride_f.round() as usize;
            let mut err = 0.0;
            for (j, u) in report.final_state.iter().enumerate() {
                err += (u - reference.final_state[j * stride]).abs();
            }
            Ok(Some(report.config.grid.h() * err))
        }
        SweepAxis::Alpha => {
            let reference = alpha_reference.expect("alpha sweeps compare to max alpha");
            let h = report.config.grid.h();
            Ok(Some(h * l1_distance(&report.final_state, reference)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;

    #[test]
    fn axis_parsing() {
        assert_eq!(SweepAxis::from_str("dt").unwrap(), SweepAxis::Dt);
        assert_eq!(SweepAxis::from_str("dx").unwrap(), SweepAxis::Dx);
        assert_eq!(SweepAxis::from_str("alpha").unwrap(), SweepAxis::Alpha);
        assert!(SweepAxis::from_str("h").is_err());
    }

    #[test]
    fn dx_values_must_tile_the_domain() {
        let base = presets::preset("advection-riemann-convergence").unwrap();
        assert!(configure(&base, SweepAxis::Dx, 0.03).is_err());
        let rc = configure(&base, SweepAxis::Dx, 0.02).unwrap();
        assert_eq!(rc.grid.cells, 201);
    }

    #[test]
    fn dt_sweep_brackets_the_stability_threshold() {
        let mut base = presets::preset("advection-riemann").unwrap();
        base.t_final = 0.2;
        // Analytic bound is ~0.00522: 0.004 and 0.005 hold TV, 0.0065 blows up.
        let report = sweep(&base, SweepAxis::Dt, &[0.004, 0.005, 0.0065]).unwrap();
        assert_eq!(report.threshold, Some((0.005, 0.0065)));
        assert!(report.entries[0].tv_bounded && report.entries[1].tv_bounded);
        assert!(!report.entries[2].tv_bounded);
    }

    #[test]
    fn alpha_sweep_profiles_converge_toward_alpha_one() {
        let mut base = presets::preset("advection-riemann-implicit").unwrap();
        base.t_final = 0.1;
        let report = sweep(&base, SweepAxis::Alpha, &[0.2, 0.5, 0.8, 1.0]).unwrap();
        let dists: Vec<f64> = report.entries.iter().map(|e| e.l1_error.unwrap()).collect();
        // Distance to the alpha = 1 profile decreases with alpha.
        assert!(dists[0] > dists[1] && dists[1] > dists[2] && dists[2] > dists[3]);
        assert!(dists[3] == 0.0);
    }
}
