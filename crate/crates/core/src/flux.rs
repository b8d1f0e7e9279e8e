//! Split flux models `f = f+ + f-` with `(f+)' >= 0` and `(f-)' <= 0`,
//! plus the slope limiters used by the MUSCL reconstruction.
//!
//! Only the two built-in models the experiments need are provided; the
//! splitting for Burgers is the sign-based one, which is the canonical
//! choice satisfying the monotonicity conditions.

use serde::{Deserialize, Serialize};

/// A flux function split into monotone parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FluxModel {
    /// `f(u) = a u`; the active part follows the sign of the wave speed.
    LinearAdvection { speed: f64 },
    /// `f(u) = u^2 / 2`, split by the sign of `u`.
    Burgers,
}

impl FluxModel {
    pub fn linear_advection(speed: f64) -> Self {
        FluxModel::LinearAdvection { speed }
    }

    pub fn burgers() -> Self {
        FluxModel::Burgers
    }

    pub fn name(&self) -> &'static str {
        match self {
            FluxModel::LinearAdvection { .. } => "linear_advection",
            FluxModel::Burgers => "burgers",
        }
    }

    /// Nondecreasing part `f+`.
    pub fn f_plus(&self, u: f64) -> f64 {
        match *self {
            FluxModel::LinearAdvection { speed } => {
                if speed >= 0.0 {
                    speed * u
                } else {
                    0.0
                }
            }
            FluxModel::Burgers => {
                if u >= 0.0 {
                    0.5 * u * u
                } else {
                    0.0
                }
            }
        }
    }

    /// Nonincreasing part `f-`.
    pub fn f_minus(&self, u: f64) -> f64 {
        match *self {
            FluxModel::LinearAdvection { speed } => {
                if speed < 0.0 {
                    speed * u
                } else {
                    0.0
                }
            }
            FluxModel::Burgers => {
                if u < 0.0 {
                    0.5 * u * u
                } else {
                    0.0
                }
            }
        }
    }

    /// Physical flux `f = f+ + f-`.
    pub fn f(&self, u: f64) -> f64 {
        self.f_plus(u) + self.f_minus(u)
    }

    /// `(f+)'(u)`, needed by the implicit cellwise Newton solves.
    pub fn df_plus(&self, u: f64) -> f64 {
        match *self {
            FluxModel::LinearAdvection { speed } => speed.max(0.0),
            FluxModel::Burgers => u.max(0.0),
        }
    }

    /// `(f-)'(u)`.
    pub fn df_minus(&self, u: f64) -> f64 {
        match *self {
            FluxModel::LinearAdvection { speed } => speed.min(0.0),
            FluxModel::Burgers => u.min(0.0),
        }
    }

    /// `max |(f+)'|` over `[u_min, u_max]`, recomputed per step from the
    /// running solution range since for Burgers it depends on the state.
    pub fn df_plus_bound(&self, u_min: f64, u_max: f64) -> f64 {
        debug_assert!(u_min <= u_max);
        match *self {
            FluxModel::LinearAdvection { speed } => speed.max(0.0),
            FluxModel::Burgers => u_max.max(0.0),
        }
    }

    /// `max |(f-)'|` over `[u_min, u_max]`.
    pub fn df_minus_bound(&self, u_min: f64, u_max: f64) -> f64 {
        debug_assert!(u_min <= u_max);
        match *self {
            FluxModel::LinearAdvection { speed } => (-speed).max(0.0),
            FluxModel::Burgers => (-u_min).max(0.0),
        }
    }

    /// `max |(f+)'| + max |(f-)'|`, the wave-speed sum in the CFL bounds.
    pub fn speed_sum(&self, u_min: f64, u_max: f64) -> f64 {
        self.df_plus_bound(u_min, u_max) + self.df_minus_bound(u_min, u_max)
    }
}

/// Slope limiter for the MUSCL reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Limiter {
    #[default]
    Minmod,
    VanLeer,
}

impl Limiter {
    /// Limiter value `phi(theta)`, in `[0, 2]`.
    ///
    /// Both limiters vanish for `theta <= 0`; the van Leer formula
    /// `(|t| + t) / (1 + t)` is therefore extended by 0 at its
    /// `theta = -1` pole. Flat-data slope ratios are defined as 0 by the
    /// callers, so no division by zero reaches this point.
    pub fn apply(&self, theta: f64) -> f64 {
        match self {
            Limiter::Minmod => theta.clamp(0.0, 1.0),
            Limiter::VanLeer => {
                if theta <= 0.0 {
                    0.0
                } else {
                    (theta.abs() + theta) / (1.0 + theta)
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Limiter::Minmod => "minmod",
            Limiter::VanLeer => "van_leer",
        }
    }
}
