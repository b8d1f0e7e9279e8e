//! Implicit upwind stepper.
//!
//! Solves, for every cell,
//!
//! ```text
//! U_j + delta_j [f+(U_j) - f+(U_{j-1})] + delta_j [f-(U_{j+1}) - f-(U_j)]
//!     = sum_k c_k U_j^k
//! ```
//!
//! at the new level by alternating-direction nonlinear Gauss-Seidel sweeps.
//! Each cellwise equation `g(v) = rhs` has `g'(v) >= 1`, so a safeguarded
//! Newton-bisection solve is monotone and cannot fail. For single-signed
//! wave speeds the system is triangular in the sweep direction and one
//! directional pass solves it exactly (fast sweeping); the iteration loop
//! is only exercised by mixed-sign flux or periodic wrap-around.

use crate::caputo::HistoryBuffer;
use crate::error::{Error, Result};
use crate::flux::FluxModel;
use crate::mesh::BoundaryTreatment;

use super::{assemble, finish_step, range_of, SchemeConfig, StepReport};

const NEWTON_TOL: f64 = 1e-13;
const NEWTON_MAX_ITER: usize = 80;

/// Unconditionally stable implicit upwind step.
pub fn implicit_step(
    history: &HistoryBuffer,
    cfg: &SchemeConfig,
) -> Result<(Vec<f64>, StepReport)> {
    let coeffs = assemble(history, cfg)?;
    let cells = history.cell_count();
    let prev = history.last();
    let (min_prev, max_prev) = range_of(prev);
    let tol = cfg.sweep_tol * (1.0 + max_prev.abs().max(min_prev.abs()));

    let mut state = prev.to_vec();
    let mut scratch = vec![0.0; cells];
    let mut sweeps_used = 0;
    loop {
        sweeps_used += 1;
        scratch.copy_from_slice(&state);
        for j in 0..cells {
            solve_cell(&mut state, j, cfg, &coeffs.mem, &coeffs.delta)?;
        }
        for j in (0..cells).rev() {
            solve_cell(&mut state, j, cfg, &coeffs.mem, &coeffs.delta)?;
        }
        let diff = state
            .iter()
            .zip(scratch.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if diff < tol {
            break;
        }
        if sweeps_used >= cfg.sweep_max {
            return Err(Error::SweepsExhausted {
                sweeps: sweeps_used,
                residual: diff,
            });
        }
    }
    finish_step(state, history, &coeffs, sweeps_used, true, cfg.dt)
}

/// Solve the scalar equation of cell `j` with its neighbors frozen at their
/// latest values. Outflow boundaries copy the unknown itself into the ghost,
/// so the corresponding upwind difference cancels identically and the term
/// is dropped rather than lagged (this is what keeps a single directional
/// sweep exact for triangular systems).
fn solve_cell(
    state: &mut [f64],
    j: usize,
    cfg: &SchemeConfig,
    mem: &[f64],
    delta: &super::Coeff,
) -> Result<()> {
    let m = state.len() - 1;
    let d = delta.at(j);
    let mut use_plus = true;
    let mut use_minus = true;
    let mut rhs = mem[j];

    let left = if j > 0 {
        Some(state[j - 1])
    } else {
        match cfg.bc {
            BoundaryTreatment::Outflow => {
                use_plus = false;
                None
            }
            BoundaryTreatment::Periodic => Some(state[m]),
            BoundaryTreatment::DirichletFromInitial { left, .. } => Some(left),
        }
    };
    let right = if j < m {
        Some(state[j + 1])
    } else {
        match cfg.bc {
            BoundaryTreatment::Outflow => {
                use_minus = false;
                None
            }
            BoundaryTreatment::Periodic => Some(state[0]),
            BoundaryTreatment::DirichletFromInitial { right, .. } => Some(right),
        }
    };
    if let Some(l) = left {
        rhs += d * cfg.flux.f_plus(l);
    }
    if let Some(r) = right {
        rhs -= d * cfg.flux.f_minus(r);
    }
    state[j] = newton_cell(&cfg.flux, d, use_plus, use_minus, rhs, state[j])?;
    Ok(())
}

/// Solve `g(v) = v + d * (f+(v) [if use_plus] - f-(v) [if use_minus]) = rhs`.
///
/// `g' >= 1`, so `|v* - guess| <= |g(guess) - rhs|` gives an immediate
/// bracket; Newton iterates are projected into it and the interval is
/// bisected whenever Newton leaves it.
fn newton_cell(
    flux: &FluxModel,
    d: f64,
    use_plus: bool,
    use_minus: bool,
    rhs: f64,
    guess: f64,
) -> Result<f64> {
    let g = |v: f64| -> f64 {
        let mut acc = v;
        if use_plus {
            acc += d * flux.f_plus(v);
        }
        if use_minus {
            acc -= d * flux.f_minus(v);
        }
        acc
    };
    let dg = |v: f64| -> f64 {
        let mut acc = 1.0;
        if use_plus {
            acc += d * flux.df_plus(v);
        }
        if use_minus {
            acc -= d * flux.df_minus(v);
        }
        acc
    };

    let tol = NEWTON_TOL * (1.0 + rhs.abs());
    let r0 = g(guess) - rhs;
    if r0.abs() <= tol {
        return Ok(guess);
    }
    let (mut lo, mut hi) = if r0 > 0.0 {
        (guess - r0, guess)
    } else {
        (guess, guess - r0)
    };
    let mut v = guess;
    for _ in 0..NEWTON_MAX_ITER {
        let res = g(v) - rhs;
        if res.abs() <= tol {
            return Ok(v);
        }
        if res > 0.0 {
            hi = v;
        } else {
            lo = v;
        }
        let mut next = v - res / dg(v);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (hi - lo).abs() < f64::EPSILON * (1.0 + v.abs()) {
            return Ok(v);
        }
        v = next;
    }
    // g' >= 1 makes this unreachable for finite data; report rather than spin.
    Err(Error::SweepsExhausted {
        sweeps: NEWTON_MAX_ITER as u32,
        residual: (g(v) - rhs).abs(),
    })
}
