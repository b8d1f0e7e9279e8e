//! Explicit upwind steppers: first-order flux differencing and the
//! second-order MUSCL reconstruction of the split fluxes.

use crate::caputo::HistoryBuffer;
use crate::error::Result;
use crate::mesh::padded;

use super::{assemble, cfl_satisfied, finish_step, SchemeConfig, StepReport};

/// First-order upwind step:
///
/// ```text
/// U_j^{n+1} = sum_k c_k U_j^k
///           - delta_j [ (f+(U_j) - f+(U_{j-1})) + (f-(U_{j+1}) - f-(U_j)) ]
/// ```
///
/// The flux differences are formed directly from `f+`/`f-`; the mean-value
/// wave-speed form divides by state differences and is used only in the
/// stability analysis. The CFL bound is checked and reported, not enforced:
/// the stability experiments deliberately run past it.
pub fn explicit1_step(
    history: &HistoryBuffer,
    cfg: &SchemeConfig,
) -> Result<(Vec<f64>, StepReport)> {
    let coeffs = assemble(history, cfg)?;
    let state = history.last();
    let cfl_ok = cfl_satisfied(cfg, &coeffs, state, 1);
    let p = padded(state, &cfg.bc, 1); // p[j + 1] = U_j
    let cells = state.len();
    let mut next = Vec::with_capacity(cells);
    for j in 0..cells {
        let flux_div = cfg.flux.f_plus(p[j + 1]) - cfg.flux.f_plus(p[j])
            + cfg.flux.f_minus(p[j + 2])
            - cfg.flux.f_minus(p[j + 1]);
        next.push(coeffs.mem[j] - coeffs.delta.at(j) * flux_div);
    }
    finish_step(next, history, &coeffs, 0, cfl_ok, cfg.dt)
}

/// Second-order MUSCL step.
///
/// Each split flux is reconstructed as a limited piecewise-linear function
/// per cell and evaluated at the interfaces from its upwind side:
/// `f+` from the left (`x_{j+1/2}-`), `f-` from the right (`x_{j+1/2}+`).
/// With all slopes zero this reduces to [`explicit1_step`].
pub fn muscl_step(history: &HistoryBuffer, cfg: &SchemeConfig) -> Result<(Vec<f64>, StepReport)> {
    let coeffs = assemble(history, cfg)?;
    let state = history.last();
    let cfl_ok = cfl_satisfied(cfg, &coeffs, state, 2);
    let p = padded(state, &cfg.bc, 2); // p[j + 2] = U_j
    let n = p.len();
    let fp: Vec<f64> = p.iter().map(|&u| cfg.flux.f_plus(u)).collect();
    let fm: Vec<f64> = p.iter().map(|&u| cfg.flux.f_minus(u)).collect();

    // sigma[i] = h * slope of the reconstruction in padded cell i:
    // (f_i - f_{i-1}) * phi((f_{i+1} - f_i) / (f_i - f_{i-1})),
    // with flat data (zero denominator) giving a zero slope.
    let limited = |f: &[f64], i: usize| -> f64 {
        let back = f[i] - f[i - 1];
        if back == 0.0 {
            return 0.0;
        }
        let theta = (f[i + 1] - f[i]) / back;
        back * cfg.limiter.apply(theta)
    };

    let cells = state.len();
    let mut next = Vec::with_capacity(cells);
    for j in 0..cells {
        let i = j + 2;
        debug_assert!(i + 2 < n);
        // f+ interface values from the cells on the left of each interface.
        let plus_right = fp[i] + 0.5 * limited(&fp, i);
        let plus_left = fp[i - 1] + 0.5 * limited(&fp, i - 1);
        // f- interface values from the cells on the right of each interface.
        let minus_right = fm[i + 1] - 0.5 * limited(&fm, i + 1);
        let minus_left = fm[i] - 0.5 * limited(&fm, i);
        let flux_div = (plus_right - plus_left) + (minus_right - minus_left);
        next.push(coeffs.mem[j] - coeffs.delta.at(j) * flux_div);
    }
    finish_step(next, history, &coeffs, 0, cfl_ok, cfg.dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flux::{FluxModel, Limiter};
    use crate::mesh::{AlphaField, BoundaryTreatment, GridSpec};
    use crate::schemes::{SchemeKind, DEFAULT_SWEEP_MAX, DEFAULT_SWEEP_TOL};

    fn config(scheme: SchemeKind, alpha: f64, dt: f64, cells: usize) -> SchemeConfig {
        SchemeConfig {
            scheme,
            limiter: Limiter::Minmod,
            dt,
            flux: FluxModel::linear_advection(1.0),
            alpha: AlphaField::constant(alpha).unwrap(),
            bc: BoundaryTreatment::Outflow,
            grid: GridSpec::new(0.0, (cells - 1) as f64 * 0.1, cells).unwrap(),
            sweep_tol: DEFAULT_SWEEP_TOL,
            sweep_max: DEFAULT_SWEEP_MAX,
        }
    }

    #[test]
    fn constant_state_is_a_fixed_point() {
        for scheme in [SchemeKind::Explicit1, SchemeKind::Muscl] {
            let cfg = config(scheme, 0.7, 0.01, 12);
            let mut history = HistoryBuffer::new(vec![3.5; 12], cfg.dt).unwrap();
            for _ in 0..4 {
                let (next, report) = crate::schemes::step(&history, &cfg).unwrap();
                assert!(report.max_principle_ok);
                for u in &next {
                    assert!((u - 3.5).abs() < 1e-13);
                }
                history.push(next).unwrap();
            }
        }
    }

    #[test]
    fn unit_cfl_upwind_shifts_exactly_at_alpha_one() {
        let cells = 10;
        let mut cfg = config(SchemeKind::Explicit1, 1.0, 0.1, cells);
        cfg.bc = BoundaryTreatment::DirichletFromInitial {
            left: 0.0,
            right: 0.0,
        };
        // dt = h = 0.1 gives lambda = 1: U_j^{n+1} = U_{j-1}^n.
        let data: Vec<f64> = (0..cells).map(|j| (j as f64).sin()).collect();
        let history = HistoryBuffer::new(data.clone(), cfg.dt).unwrap();
        let (next, _) = explicit1_step(&history, &cfg).unwrap();
        assert!((next[0] - 0.0).abs() < 1e-14); // inflow ghost
        for j in 1..cells {
            assert!((next[j] - data[j - 1]).abs() < 1e-14);
        }
    }

    #[test]
    fn muscl_equals_first_order_on_linear_data() {
        // Linear data has equal slopes everywhere, so the second-order
        // corrections cancel and both limiters return phi(1) = 1.
        for limiter in [Limiter::Minmod, Limiter::VanLeer] {
            let mut cfg = config(SchemeKind::Muscl, 0.8, 0.001, 16);
            cfg.limiter = limiter;
            cfg.bc = BoundaryTreatment::DirichletFromInitial {
                left: -0.15,
                right: 1.35,
            };
            let data: Vec<f64> = (0..16).map(|j| -0.15 + 0.1 * j as f64).collect();
            let history = HistoryBuffer::new(data, cfg.dt).unwrap();
            let (muscl, _) = muscl_step(&history, &cfg).unwrap();
            // Interior cells: compare to the unlimited second-order update,
            // which on linear data equals plain first-order upwind.
            let mut cfg1 = cfg.clone();
            cfg1.scheme = SchemeKind::Explicit1;
            let history1 =
                HistoryBuffer::new((0..16).map(|j| -0.15 + 0.1 * j as f64).collect(), cfg.dt)
                    .unwrap();
            let (first, _) = explicit1_step(&history1, &cfg1).unwrap();
            for j in 2..14 {
                assert!(
                    (muscl[j] - first[j]).abs() < 1e-14,
                    "{limiter:?} cell {j}: {} vs {}",
                    muscl[j],
                    first[j]
                );
            }
        }
    }

    #[test]
    fn riemann_advection_keeps_tv_and_max_principle_under_cfl() {
        // alpha = 0.9, h = 0.01, dt = 0.005 (inside the CFL bound).
        let cells = 401;
        let mut cfg = config(SchemeKind::Explicit1, 0.9, 0.005, cells);
        cfg.grid = GridSpec::new(-2.0, 2.0, cells).unwrap();
        let data: Vec<f64> = cfg
            .grid
            .nodes()
            .map(|x| if x < 0.0 { 2.0 } else { 1.0 })
            .collect();
        cfg.bc = BoundaryTreatment::dirichlet_from_initial(&data);
        let mut history = HistoryBuffer::new(data, cfg.dt).unwrap();
        for _ in 0..40 {
            let (next, report) = explicit1_step(&history, &cfg).unwrap();
            assert!(report.cfl_ok);
            assert!(report.max_principle_ok);
            let tv = crate::diagnostics::total_variation(&next);
            assert!(tv <= 1.0 + 1e-10, "tv = {tv}");
            history.push(next).unwrap();
        }
    }

    #[test]
    fn cfl_flag_reports_violations() {
        let cells = 101;
        let mut cfg = config(SchemeKind::Explicit1, 0.9, 0.0065, cells);
        cfg.grid = GridSpec::new(-0.5, 0.5, cells).unwrap();
        let data: Vec<f64> = cfg
            .grid
            .nodes()
            .map(|x| if x < 0.0 { 2.0 } else { 1.0 })
            .collect();
        cfg.bc = BoundaryTreatment::dirichlet_from_initial(&data);
        let history = HistoryBuffer::new(data, cfg.dt).unwrap();
        let (_, report) = explicit1_step(&history, &cfg).unwrap();
        assert!(!report.cfl_ok);
    }
}
