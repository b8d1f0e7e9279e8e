//! Uniform 1-D grid, boundary treatments, and the fractional-exponent field
//! `a(x, t)`, which may vary in space and time (inhomogeneous memory effect).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node-centered uniform grid `x_j = x_left + j h`, `j = 0 .. cells-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_left: f64,
    pub x_right: f64,
    /// Number of nodes (`M + 1` for `M` intervals).
    pub cells: usize,
}

impl GridSpec {
    pub fn new(x_left: f64, x_right: f64, cells: usize) -> Result<Self> {
        let g = Self {
            x_left,
            x_right,
            cells,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_right > self.x_left) {
            return Err(Error::InvalidConfig(format!(
                "grid requires x_right > x_left, got [{}, {}]",
                self.x_left, self.x_right
            )));
        }
        if self.cells < 3 {
            return Err(Error::InvalidConfig(format!(
                "grid requires at least 3 nodes, got {}",
                self.cells
            )));
        }
        Ok(())
    }

    /// Node spacing `h = (x_right - x_left) / M`.
    pub fn h(&self) -> f64 {
        (self.x_right - self.x_left) / (self.cells - 1) as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        self.x_left + j as f64 * self.h()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.cells).map(|j| self.node(j))
    }
}

/// Fractional exponent field: constant, or an arbitrary function of `(x, t)`.
///
/// Every evaluation is checked to lie in `(0, 1]`; out-of-range values raise
/// a configuration error rather than being clamped.
#[derive(Clone)]
pub enum AlphaField {
    Constant(f64),
    Function(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for AlphaField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaField::Constant(a) => write!(f, "AlphaField::Constant({a})"),
            AlphaField::Function(_) => write!(f, "AlphaField::Function(..)"),
        }
    }
}

impl AlphaField {
    pub fn constant(alpha: f64) -> Result<Self> {
        crate::specialfn::check_alpha(alpha)?;
        Ok(AlphaField::Constant(alpha))
    }

    pub fn function(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        AlphaField::Function(Arc::new(f))
    }

    /// `a(x, l) = 1 - l exp(-30 x^2 - 7000 q)` with `q = 0.5^12` as printed
    /// in the variable-exponent advection experiment, or `q = (t - 0.5)^12`
    /// for the time-dependent reading. Both variants are offered; the printed
    /// one stays in `(0, 1]` for every tested `l`, the time-dependent one
    /// only for `l < 1`.
    pub fn advection_bump(lambda: f64, time_dependent: bool) -> Self {
        AlphaField::function(move |x: f64, t: f64| {
            let q = if time_dependent {
                (t - 0.5).powi(12)
            } else {
                0.5f64.powi(12)
            };
            1.0 - lambda * (-30.0 * x * x - 7000.0 * q).exp()
        })
    }

    /// `a(x, t) = 1 - 0.9 exp(-8 |x| - 7000 (t - 0.8)^12)`, the localized
    /// memory pulse used in the variable-exponent Burgers experiment.
    pub fn burgers_pulse() -> Self {
        AlphaField::function(|x: f64, t: f64| {
            1.0 - 0.9 * (-8.0 * x.abs() - 7000.0 * (t - 0.8).powi(12)).exp()
        })
    }

    /// Evaluate and range-check.
    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        let a = match self {
            AlphaField::Constant(a) => *a,
            AlphaField::Function(f) => f(x, t),
        };
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::AlphaFieldOutOfRange { alpha: a, x, t });
        }
        Ok(a)
    }

    /// The constant value, when the field does not vary.
    pub fn as_constant(&self) -> Option<f64> {
        match self {
            AlphaField::Constant(a) => Some(*a),
            AlphaField::Function(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Ghost-cell policy at the domain ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryTreatment {
    /// Ghosts copy the nearest interior node.
    Outflow,
    /// Ghosts wrap around modulo the node count.
    Periodic,
    /// Ghosts hold the initial boundary values for all time.
    DirichletFromInitial { left: f64, right: f64 },
}

impl BoundaryTreatment {
    /// Freeze the endpoints of the initial data as Dirichlet ghost values.
    pub fn dirichlet_from_initial(initial: &[f64]) -> Self {
        BoundaryTreatment::DirichletFromInitial {
            left: initial[0],
            right: *initial.last().expect("initial data is nonempty"),
        }
    }
}

/// Pointwise samples of `u0` at the grid nodes. The schemes are
/// finite-difference flavored, so no cell averaging is applied.
pub fn sample_initial(grid: &GridSpec, u0: impl Fn(f64) -> f64) -> Vec<f64> {
    grid.nodes().map(u0).collect()
}

/// Ghost values outside one end of `state`, ordered by increasing distance
/// from the interior; `width` of 1 or 2 (the MUSCL stencil needs two).
pub fn ghost_values(state: &[f64], bc: &BoundaryTreatment, side: Side, width: usize) -> Vec<f64> {
    assert!((1..=2).contains(&width), "ghost width must be 1 or 2");
    assert!(state.len() >= 2);
    let m = state.len() - 1;
    (1..=width)
        .map(|d| match (bc, side) {
            (BoundaryTreatment::Outflow, Side::Left) => state[0],
            (BoundaryTreatment::Outflow, Side::Right) => state[m],
            (BoundaryTreatment::Periodic, Side::Left) => state[m + 1 - d],
            (BoundaryTreatment::Periodic, Side::Right) => state[d - 1],
            (BoundaryTreatment::DirichletFromInitial { left, .. }, Side::Left) => *left,
            (BoundaryTreatment::DirichletFromInitial { right, .. }, Side::Right) => *right,
        })
        .collect()
}

/// `state` extended by `width` ghosts on both sides:
/// `[L_width .. L_1, state, R_1 .. R_width]`.
pub fn padded(state: &[f64], bc: &BoundaryTreatment, width: usize) -> Vec<f64> {
    let left = ghost_values(state, bc, Side::Left, width);
    let right = ghost_values(state, bc, Side::Right, width);
    let mut out = Vec::with_capacity(state.len() + 2 * width);
    out.extend(left.iter().rev());
    out.extend_from_slice(state);
    out.extend_from_slice(&right);
    out
}
