//! Run configuration: JSON schema, preset expansion, and file/flag merging.
//!
//! A config file is a single JSON object; the optional `"preset"` key names
//! a built-in base configuration and every other key overrides it. Keys
//! holding tagged enums (objects with a `"kind"` field) are replaced
//! wholesale rather than merged per-field.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::flux::{FluxModel, Limiter};
use crate::mesh::{AlphaField, BoundaryTreatment, GridSpec};
use crate::schemes::{SchemeConfig, SchemeKind, DEFAULT_SWEEP_MAX, DEFAULT_SWEEP_TOL};

use super::presets;

/// Serializable description of the fractional-exponent field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphaSpec {
    Constant {
        value: f64,
    },
    /// `1 - lambda exp(-30 x^2 - 7000 q)`; `q = 0.5^12` as printed, or
    /// `q = (t - 0.5)^12` when `time_dependent` is set.
    AdvectionBump {
        lambda: f64,
        #[serde(default)]
        time_dependent: bool,
    },
    /// `1 - 0.9 exp(-8 |x| - 7000 (t - 0.8)^12)`.
    BurgersPulse,
}

impl AlphaSpec {
    pub fn to_field(&self) -> Result<AlphaField> {
        match *self {
            AlphaSpec::Constant { value } => AlphaField::constant(value),
            AlphaSpec::AdvectionBump {
                lambda,
                time_dependent,
            } => Ok(AlphaField::advection_bump(lambda, time_dependent)),
            AlphaSpec::BurgersPulse => Ok(AlphaField::burgers_pulse()),
        }
    }

    pub fn constant_value(&self) -> Option<f64> {
        match self {
            AlphaSpec::Constant { value } => Some(*value),
            _ => None,
        }
    }
}

/// Built-in initial conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialData {
    /// `left` for `x < 0`, `right` for `x >= 0`.
    Riemann { left: f64, right: f64 },
    /// `exp(-10 x^2) + 1`.
    OffsetGaussian,
    /// `-sin(pi x)`.
    NegSinePi,
    /// `0.5 cos(pi (2x + 4)) + 0.5` on `[-1.5, -0.5]`, zero elsewhere.
    CosineBump,
}

impl InitialData {
    pub fn sample(&self, grid: &GridSpec) -> Vec<f64> {
        let f: Box<dyn Fn(f64) -> f64> = match *self {
            InitialData::Riemann { left, right } => {
                Box::new(move |x| if x < 0.0 { left } else { right })
            }
            InitialData::OffsetGaussian => Box::new(|x| (-10.0 * x * x).exp() + 1.0),
            InitialData::NegSinePi => Box::new(|x| -(std::f64::consts::PI * x).sin()),
            InitialData::CosineBump => Box::new(|x| {
                if (-1.5..=-0.5).contains(&x) {
                    0.5 * (std::f64::consts::PI * (2.0 * x + 4.0)).cos() + 0.5
                } else {
                    0.0
                }
            }),
        };
        crate::mesh::sample_initial(grid, f)
    }
}

/// Ghost-cell policy by name; Dirichlet values are frozen from the sampled
/// initial data when the run starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    Outflow,
    Periodic,
    DirichletFromInitial,
}

impl BoundaryKind {
    pub fn bind(&self, initial: &[f64]) -> BoundaryTreatment {
        match self {
            BoundaryKind::Outflow => BoundaryTreatment::Outflow,
            BoundaryKind::Periodic => BoundaryTreatment::Periodic,
            BoundaryKind::DirichletFromInitial => {
                BoundaryTreatment::dirichlet_from_initial(initial)
            }
        }
    }
}

fn default_sweep_tol() -> f64 {
    DEFAULT_SWEEP_TOL
}

fn default_sweep_max() -> u32 {
    DEFAULT_SWEEP_MAX
}

/// A fully resolved run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Output subdirectory name.
    pub name: String,
    pub scheme: SchemeKind,
    #[serde(default)]
    pub limiter: Limiter,
    pub flux: FluxModel,
    pub alpha: AlphaSpec,
    pub grid: GridSpec,
    pub initial: InitialData,
    pub boundary: BoundaryKind,
    pub dt: f64,
    pub t_final: f64,
    #[serde(default = "default_sweep_tol")]
    pub sweep_tol: f64,
    #[serde(default = "default_sweep_max")]
    pub sweep_max: u32,
    /// Abort instead of warn when an explicit step violates its CFL bound.
    #[serde(default)]
    pub strict_cfl: bool,
    /// Diagnostics cadence; default keeps at most ~1000 records.
    #[serde(default)]
    pub record_every: Option<usize>,
    /// Where to write CSV output; `None` keeps the run in memory.
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if !(self.dt > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_final > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "t_final must be positive, got {}",
                self.t_final
            )));
        }
        if let Some(a) = self.alpha.constant_value() {
            crate::specialfn::check_alpha(a)?;
        }
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(Error::InvalidConfig(format!(
                "invalid run name `{}`",
                self.name
            )));
        }
        Ok(())
    }

    /// Number of uniform steps covering `t_final` (the last step may
    /// overshoot by less than `dt`; the L1 weights require a uniform grid).
    pub fn n_steps(&self) -> usize {
        ((self.t_final / self.dt) - 1e-9).ceil().max(1.0) as usize
    }

    /// Bind the scheme-facing configuration against sampled initial data.
    pub fn scheme_config(&self, initial: &[f64]) -> Result<SchemeConfig> {
        let cfg = SchemeConfig {
            scheme: self.scheme,
            limiter: self.limiter,
            dt: self.dt,
            flux: self.flux,
            alpha: self.alpha.to_field()?,
            bc: self.boundary.bind(initial),
            grid: self.grid,
            sweep_tol: self.sweep_tol,
            sweep_max: self.sweep_max,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Effective diagnostics stride.
    pub fn record_stride(&self) -> usize {
        match self.record_every {
            Some(k) => k.max(1),
            None => {
                let n = self.n_steps();
                if n <= 1000 {
                    1
                } else {
                    n.div_ceil(1000)
                }
            }
        }
    }
}

/// Overlay `patch` onto `base`. Objects merge key-by-key except tagged enums
/// (objects containing `"kind"`), which replace the base value entirely.
fn merge_value(base: &mut Value, patch: Value) {
    match (base, patch) {
        (Value::Object(base_map), Value::Object(patch_map)) => {
            if patch_map.contains_key("kind") {
                *base_map = patch_map;
                return;
            }
            for (key, value) in patch_map {
                match base_map.get_mut(&key) {
                    Some(slot) => merge_value(slot, value),
                    None => {
                        base_map.insert(key, value);
                    }
                }
            }
        }
        (slot, patch) => *slot = patch,
    }
}

/// Resolve a run configuration from an optional JSON file and an optional
/// preset name (a `--preset` flag beats the file's `"preset"` key; the other
/// file keys override the preset's).
pub fn resolve_config(file: Option<&Path>, preset_flag: Option<&str>) -> Result<RunConfig> {
    let file_value: Option<Value> = match file {
        Some(path) => Some(serde_json::from_str(&std::fs::read_to_string(path)?)?),
        None => None,
    };

    let mut overrides = match file_value {
        Some(Value::Object(map)) => map,
        Some(_) => {
            return Err(Error::InvalidConfig(
                "config file must hold a JSON object".into(),
            ))
        }
        None => serde_json::Map::new(),
    };

    let file_preset = match overrides.remove("preset") {
        Some(Value::String(s)) => Some(s),
        Some(Value::Null) | None => None,
        Some(other) => {
            return Err(Error::InvalidConfig(format!(
                "`preset` must be a string, got {other}"
            )))
        }
    };
    let preset_name = preset_flag.map(str::to_owned).or(file_preset);

    let config = match preset_name {
        Some(name) => {
            let base = presets::preset(&name)?;
            let mut value = serde_json::to_value(&base)?;
            merge_value(&mut value, Value::Object(overrides));
            serde_json::from_value(value)?
        }
        None => serde_json::from_value(Value::Object(overrides))?,
    };
    let config: RunConfig = config;
    config.validate()?;
    Ok(config)
}
