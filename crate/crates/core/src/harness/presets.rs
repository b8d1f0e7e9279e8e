//! Built-in experiment presets. Each one reproduces one of the reference
//! numerical experiments; `sweep` varies `dt`, `dx`, or `alpha` around them.
//!
//! Domains are not part of the original problem statements (the equations
//! live on the whole line); the defaults below are wide enough that no wave
//! reaches a boundary during the configured horizon.

use crate::error::{Error, Result};
use crate::flux::{FluxModel, Limiter};
use crate::mesh::GridSpec;
use crate::schemes::{SchemeKind, DEFAULT_SWEEP_MAX, DEFAULT_SWEEP_TOL};

use super::config::{AlphaSpec, BoundaryKind, InitialData, RunConfig};

/// Names of all built-in presets, with a one-line description.
pub const CATALOG: &[(&str, &str)] = &[
    (
        "advection-riemann",
        "explicit first-order upwind, advection of a 2/1 step, alpha 0.9",
    ),
    (
        "advection-riemann-muscl",
        "MUSCL (minmod), advection of a 2/1 step, alpha 0.9",
    ),
    (
        "advection-riemann-convergence",
        "explicit first-order upwind, step data, tiny dt for dx sweeps, alpha 0.9",
    ),
    (
        "advection-gaussian-muscl",
        "MUSCL (van Leer), smooth Gaussian advection for second-order dx sweeps, alpha 0.8",
    ),
    (
        "advection-riemann-implicit",
        "implicit upwind, advection of a 2/1 step at alpha 0.2, dt = dx",
    ),
    (
        "burgers-sine",
        "implicit upwind, Burgers with -sin(pi x) data, periodic, alpha 0.5",
    ),
    (
        "burgers-sine-varalpha",
        "implicit upwind, Burgers with the localized memory pulse alpha(x, t)",
    ),
    (
        "advection-varalpha-bump",
        "implicit upwind, cosine bump advected through a spatially varying alpha",
    ),
    (
        "burgers-riemann-nonuniqueness",
        "implicit upwind, Burgers -1/+1 step at alpha 0.8: rarefaction with memory",
    ),
];

pub fn names() -> Vec<&'static str> {
    CATALOG.iter().map(|(name, _)| *name).collect()
}

fn base(name: &str) -> RunConfig {
    RunConfig {
        name: name.to_owned(),
        scheme: SchemeKind::Explicit1,
        limiter: Limiter::Minmod,
        flux: FluxModel::linear_advection(1.0),
        alpha: AlphaSpec::Constant { value: 0.9 },
        grid: GridSpec {
            x_left: -2.0,
            x_right: 2.0,
            cells: 401,
        },
        initial: InitialData::Riemann {
            left: 2.0,
            right: 1.0,
        },
        boundary: BoundaryKind::DirichletFromInitial,
        dt: 0.005,
        t_final: 0.2,
        sweep_tol: DEFAULT_SWEEP_TOL,
        sweep_max: DEFAULT_SWEEP_MAX,
        strict_cfl: false,
        record_every: None,
        out_dir: None,
    }
}

/// Expand a preset name into a full configuration.
pub fn preset(name: &str) -> Result<RunConfig> {
    let mut cfg = base(name);
    match name {
        "advection-riemann" => {}
        "advection-riemann-muscl" => {
            cfg.scheme = SchemeKind::Muscl;
            cfg.dt = 0.002;
        }
        "advection-riemann-convergence" => {
            cfg.grid.cells = 101; // dx = 0.04, refined by dx sweeps
            cfg.dt = 1e-4;
        }
        "advection-gaussian-muscl" => {
            cfg.scheme = SchemeKind::Muscl;
            cfg.limiter = Limiter::VanLeer;
            cfg.alpha = AlphaSpec::Constant { value: 0.8 };
            cfg.grid.cells = 101;
            cfg.initial = InitialData::OffsetGaussian;
            cfg.dt = 1e-4;
        }
        "advection-riemann-implicit" => {
            cfg.scheme = SchemeKind::Implicit;
            cfg.alpha = AlphaSpec::Constant { value: 0.2 };
            cfg.dt = 0.01;
        }
        "burgers-sine" => {
            cfg.scheme = SchemeKind::Implicit;
            cfg.flux = FluxModel::burgers();
            cfg.alpha = AlphaSpec::Constant { value: 0.5 };
            cfg.grid = GridSpec {
                x_left: -1.0,
                x_right: 1.0,
                cells: 201,
            };
            cfg.initial = InitialData::NegSinePi;
            cfg.boundary = BoundaryKind::Periodic;
            cfg.dt = 0.01;
            cfg.t_final = 0.5;
        }
        "burgers-sine-varalpha" => {
            cfg = preset("burgers-sine")?;
            cfg.name = name.to_owned();
            cfg.alpha = AlphaSpec::BurgersPulse;
        }
        "advection-varalpha-bump" => {
            cfg.scheme = SchemeKind::Implicit;
            cfg.alpha = AlphaSpec::AdvectionBump {
                lambda: 0.5,
                time_dependent: false,
            };
            cfg.grid = GridSpec {
                x_left: -3.0,
                x_right: 3.0,
                cells: 601,
            };
            cfg.initial = InitialData::CosineBump;
            cfg.dt = 0.01;
            cfg.t_final = 1.0;
        }
        "burgers-riemann-nonuniqueness" => {
            cfg.scheme = SchemeKind::Implicit;
            cfg.flux = FluxModel::burgers();
            cfg.alpha = AlphaSpec::Constant { value: 0.8 };
            cfg.grid = GridSpec {
                x_left: -0.2,
                x_right: 0.2,
                cells: 401,
            };
            cfg.initial = InitialData::Riemann {
                left: -1.0,
                right: 1.0,
            };
            cfg.dt = 0.0005;
            cfg.t_final = 0.02;
        }
        _ => return Err(Error::UnknownPreset(name.to_owned())),
    }
    Ok(cfg)
}
