//! Solution diagnostics: total variation, discrete norms, the energy
//! decomposition of the implicit scheme, and convergence-order fitting.

use crate::caputo::{CaputoWeights, HistoryBuffer};
use crate::error::{Error, Result};

/// Per-level scalar diagnostics of a solution snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub level: usize,
    pub t: f64,
    pub tv: f64,
    pub l1_norm: f64,
    pub l2_norm_sq: f64,
    /// Discrete square entropy `sum_j u_j^2`.
    pub entropy_l2: f64,
    pub min_val: f64,
    pub max_val: f64,
}

/// Compute all scalar diagnostics for one snapshot.
pub fn record(level: usize, t: f64, state: &[f64]) -> DiagnosticsRecord {
    let l2_norm_sq = state.iter().map(|u| u * u).sum();
    DiagnosticsRecord {
        level,
        t,
        tv: total_variation(state),
        l1_norm: state.iter().map(|u| u.abs()).sum(),
        l2_norm_sq,
        entropy_l2: l2_norm_sq,
        min_val: state.iter().copied().fold(f64::INFINITY, f64::min),
        max_val: state.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Total variation `sum_j |u_{j+1} - u_j|` over interior pairs.
pub fn total_variation(state: &[f64]) -> f64 {
    state.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// Discrete l1 distance `sum_j |u_j - v_j|`.
pub fn l1_distance(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    Ok(u.iter().zip(v.iter()).map(|(a, b)| (a - b).abs()).sum())
}

/// Grid-weighted l1 error `h sum_j |u_j - v_j|`, the norm used by the
/// convergence studies (comparable across resolutions).
pub fn l1_grid_error(u: &[f64], v: &[f64], h: f64) -> Result<f64> {
    Ok(h * l1_distance(u, v)?)
}

/// One step of the energy ledger of the implicit upwind scheme.
#[derive(Debug, Clone, Copy)]
pub struct EnergyEntry {
    /// The new time index `n + 1`.
    pub level: usize,
    /// `||U^{n+1}||_2^2`.
    pub l2_next: f64,
    /// Memory damping `sum_j sum_k c_k (U_j^{n+1} - U_j^k)^2`.
    pub damping: f64,
    /// Upwind dissipation `lambda sum_j (U_j^{n+1} - U_{j-1}^{n+1})^2`.
    pub dissipation: f64,
    /// Right-hand side `sum_k c_k ||U^k||_2^2`.
    pub weighted_history_l2: f64,
    /// Relative defect of the identity.
    pub defect: f64,
}

#[derive(Debug, Clone)]
pub struct EnergyLedger {
    pub entries: Vec<EnergyEntry>,
}

const ENERGY_IDENTITY_TOL: f64 = 1e-9;

/// Split the l2 energy balance of an implicit linear-advection run into the
/// memory-damping and upwind-dissipation contributions and verify the exact
/// discrete identity
///
/// ```text
/// ||U^{n+1}||^2 + sum_{j,k} c_k (U_j^{n+1} - U_j^k)^2
///              + lambda sum_j (U_j^{n+1} - U_{j-1}^{n+1})^2
///   = sum_k c_k ||U^k||^2
/// ```
///
/// to 1e-9 relative per step. `lambda = a Gamma(2 - alpha) dt^alpha / h`
/// is the scheme's own upwind coefficient. The dissipation sum is cyclic
/// (`U_{-1} = U_M`), so the identity is exact for periodic runs; a violation
/// beyond tolerance signals a scheme bug.
pub fn energy_decomposition(
    history: &HistoryBuffer,
    weights_per_level: &[CaputoWeights],
    lambda: f64,
) -> Result<EnergyLedger> {
    if weights_per_level.len() + 1 != history.len() {
        return Err(Error::DimensionMismatch {
            expected: history.len() - 1,
            got: weights_per_level.len(),
        });
    }
    let mut entries = Vec::with_capacity(weights_per_level.len());
    for (idx, weights) in weights_per_level.iter().enumerate() {
        let level = idx + 1;
        if weights.level != level {
            return Err(Error::DimensionMismatch {
                expected: level,
                got: weights.level,
            });
        }
        let next = history.level(level);
        let l2_next: f64 = next.iter().map(|u| u * u).sum();
        let mut damping = 0.0;
        let mut weighted_history_l2 = 0.0;
        for (k, c) in weights.weights().iter().enumerate() {
            let past = history.level(k);
            let mut diff_sq = 0.0;
            let mut past_sq = 0.0;
            for (u_next, u_past) in next.iter().zip(past.iter()) {
                diff_sq += (u_next - u_past) * (u_next - u_past);
                past_sq += u_past * u_past;
            }
            damping += c * diff_sq;
            weighted_history_l2 += c * past_sq;
        }
        let m = next.len() - 1;
        let mut dissipation = (next[0] - next[m]) * (next[0] - next[m]);
        for w in next.windows(2) {
            dissipation += (w[1] - w[0]) * (w[1] - w[0]);
        }
        dissipation *= lambda;
        let defect = (l2_next + damping + dissipation - weighted_history_l2).abs()
            / weighted_history_l2.abs().max(f64::MIN_POSITIVE);
        if defect > ENERGY_IDENTITY_TOL {
            return Err(Error::EnergyIdentityViolated { level, defect });
        }
        entries.push(EnergyEntry {
            level,
            l2_next,
            damping,
            dissipation,
            weighted_history_l2,
            defect,
        });
    }
    Ok(EnergyLedger { entries })
}

/// Least-squares slope of `log(error)` against `log(resolution)`.
pub fn convergence_slope(errors: &[(f64, f64)]) -> Result<f64> {
    if errors.len() < 3 {
        return Err(Error::InvalidConfig(format!(
            "convergence fit needs at least 3 points, got {}",
            errors.len()
        )));
    }
    if errors.iter().any(|(r, e)| *r <= 0.0 || *e <= 0.0) {
        return Err(Error::InvalidConfig(
            "convergence fit requires positive resolutions and errors".into(),
        ));
    }
    let n = errors.len() as f64;
    let xs: Vec<f64> = errors.iter().map(|(r, _)| r.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|(_, e)| e.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        num += (x - x_mean) * (y - y_mean);
        den += (x - x_mean) * (x - x_mean);
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caputo::caputo_weights;

    #[test]
    fn total_variation_examples() {
        assert_eq!(total_variation(&[2.0, 2.0, 1.0, 1.0]), 1.0);
        assert_eq!(total_variation(&[5.0, 5.0, 5.0]), 0.0);
        assert_eq!(total_variation(&[0.0, 1.0, 0.0]), 2.0);
    }

    #[test]
    fn l1_distance_examples() {
        assert_eq!(l1_distance(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(l1_distance(&[1.0, 2.0], &[2.0, 2.0]).unwrap(), 1.0);
        assert!(l1_distance(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn shifted_copy_distance_reproduces_total_variation() {
        let u = [0.5, 1.0, -1.0, 2.0, 2.0, 0.0];
        let tv = total_variation(&u);
        let d = l1_distance(&u[..u.len() - 1], &u[1..]).unwrap();
        assert!((tv - d).abs() < 1e-15);
    }

    #[test]
    fn energy_ledger_balances_on_constant_state() {
        let mut h = HistoryBuffer::new(vec![2.0; 8], 0.1).unwrap();
        h.push(vec![2.0; 8]).unwrap();
        h.push(vec![2.0; 8]).unwrap();
        let weights = vec![
            caputo_weights(0.5, 1).unwrap(),
            caputo_weights(0.5, 2).unwrap(),
        ];
        let ledger = energy_decomposition(&h, &weights, 3.0).unwrap();
        for e in &ledger.entries {
            assert!(e.damping.abs() < 1e-12);
            assert!(e.dissipation.abs() < 1e-12);
            assert!(e.defect < 1e-12);
        }
    }

    #[test]
    fn energy_ledger_rejects_inconsistent_history() {
        // A history that was NOT produced by the implicit scheme violates
        // the identity and is reported as such.
        let mut h = HistoryBuffer::new(vec![0.0, 1.0, 0.0, 0.0], 0.1).unwrap();
        h.push(vec![0.3, 0.9, 0.4, 0.1]).unwrap();
        let weights = vec![caputo_weights(0.5, 1).unwrap()];
        let err = energy_decomposition(&h, &weights, 2.0).unwrap_err();
        assert!(matches!(err, Error::EnergyIdentityViolated { .. }));
    }

    #[test]
    fn convergence_slope_recovers_exact_power_laws() {
        let hs = [0.1, 0.05, 0.025, 0.0125];
        let first: Vec<(f64, f64)> = hs.iter().map(|h| (*h, 3.0 * h)).collect();
        let second: Vec<(f64, f64)> = hs.iter().map(|h| (*h, 0.7 * h * h)).collect();
        let frac: Vec<(f64, f64)> = hs.iter().map(|h| (*h, 2.0 * h.powf(1.5))).collect();
        assert!((convergence_slope(&first).unwrap() - 1.0).abs() < 1e-10);
        assert!((convergence_slope(&second).unwrap() - 2.0).abs() < 1e-10);
        assert!((convergence_slope(&frac).unwrap() - 1.5).abs() < 1e-10);
    }

    #[test]
    fn convergence_slope_rejects_bad_input() {
        assert!(convergence_slope(&[(0.1, 1.0), (0.05, 0.5)]).is_err());
        assert!(convergence_slope(&[(0.1, 1.0), (0.05, 0.5), (0.025, -0.2)]).is_err());
    }
}
