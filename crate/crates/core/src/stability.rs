//! Stability tooling: the modified CFL bound for the explicit schemes and
//! the boundary locus of the fractional backward Euler stability region.
//!
//! The explicit CFL condition reads
//!
//! ```text
//! order * Gamma(2-a) dt^a * (max |(f+)'| + max |(f-)'|) / h <= 2 - 2^{1-a},
//! ```
//!
//! matching the schemes' actual update coefficient
//! `delta = Gamma(2-a) dt^a / h`. Either way `dt = O(h^{1/a})`: the
//! admissible step collapses as `a -> 0`, which is what motivates the
//! implicit scheme.

use num_complex::Complex64;

use crate::caputo::caputo_weights;
use crate::error::{Error, Result};
use crate::specialfn::{check_alpha, gamma};

/// Maximal explicit time step for a given spacing and wave-speed sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CflBound {
    pub tau_max: f64,
    pub alpha: f64,
    pub h: f64,
    /// `max |(f+)'| + max |(f-)'|` over the solution range.
    pub speed_sum: f64,
    /// 1 for first-order upwind, 2 for MUSCL.
    pub order_factor: u8,
}

impl CflBound {
    /// Degenerate zero-speed case: any time step is admissible.
    pub fn unbounded(alpha: f64, h: f64, order_factor: u8) -> Self {
        CflBound {
            tau_max: f64::INFINITY,
            alpha,
            h,
            speed_sum: 0.0,
            order_factor,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.tau_max.is_infinite()
    }
}

/// Largest stable time step
/// `tau_max = (h c~ / (Gamma(2-a) order * speed_sum))^{1/a}`.
pub fn cfl_max_dt(alpha: f64, h: f64, speed_sum: f64, order_factor: u8) -> Result<CflBound> {
    check_alpha(alpha)?;
    if !(h > 0.0) {
        return Err(Error::InvalidConfig(format!("h must be positive, got {h}")));
    }
    if speed_sum < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "speed_sum must be nonnegative, got {speed_sum}"
        )));
    }
    if !(order_factor == 1 || order_factor == 2) {
        return Err(Error::InvalidConfig(format!(
            "order_factor must be 1 or 2, got {order_factor}"
        )));
    }
    if speed_sum == 0.0 {
        return Ok(CflBound::unbounded(alpha, h, order_factor));
    }
    let tilde = 2.0 - 2.0f64.powf(1.0 - alpha);
    let tau_max =
        (h * tilde / (gamma(2.0 - alpha) * order_factor as f64 * speed_sum)).powf(1.0 / alpha);
    Ok(CflBound {
        tau_max,
        alpha,
        h,
        speed_sum,
        order_factor,
    })
}

/// One sampled point of the boundary locus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocusPoint {
    pub theta: f64,
    pub z: Complex64,
}

/// Boundary locus of the fractional backward Euler stability region at
/// history length `n`.
#[derive(Debug, Clone)]
pub struct BoundaryLocus {
    pub alpha: f64,
    /// History length `n`; the stability polynomial has degree `n + 1`.
    pub memory_level: usize,
    pub points: Vec<LocusPoint>,
}

impl BoundaryLocus {
    pub fn z_values(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.z).collect()
    }
}

/// Sample `z(theta) = 1 - sum_{k=0}^{n} c_k^{n+1} e^{i (k-n-1) theta}` at
/// uniform angles in `[0, 2 pi)`. The stability region is the exterior of
/// the closed curve; the curve passes through the origin at `theta = 0`
/// because the weights sum to one.
pub fn boundary_locus(alpha: f64, n: usize, theta_samples: usize) -> Result<BoundaryLocus> {
    check_alpha(alpha)?;
    if theta_samples < 8 {
        return Err(Error::InvalidConfig(format!(
            "need at least 8 theta samples, got {theta_samples}"
        )));
    }
    let weights = caputo_weights(alpha, n + 1)?;
    let mut points = Vec::with_capacity(theta_samples);
    for m in 0..theta_samples {
        let theta = 2.0 * std::f64::consts::PI * m as f64 / theta_samples as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, c) in weights.weights().iter().enumerate() {
            let phase = (k as f64 - (n + 1) as f64) * theta;
            sum += Complex64::new(c * phase.cos(), c * phase.sin());
        }
        points.push(LocusPoint {
            theta,
            z: Complex64::new(1.0, 0.0) - sum,
        });
    }
    Ok(BoundaryLocus {
        alpha,
        memory_level: n,
        points,
    })
}

/// Symmetric Hausdorff distance between two sampled curves.
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    fn directed(from: &[Complex64], to: &[Complex64]) -> f64 {
        from.iter()
            .map(|p| {
                to.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
    directed(a, b).max(directed(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_cfl_recovered_at_alpha_one() {
        let b = cfl_max_dt(1.0, 0.01, 1.0, 1).unwrap();
        assert!((b.tau_max - 0.01).abs() < 1e-15);
    }

    #[test]
    fn first_order_bound_brackets_reported_thresholds() {
        // alpha = 0.9, h = 0.01, unit speed: tau_max between the observed
        // converging (0.005) and diverging (0.0065) steps.
        let b = cfl_max_dt(0.9, 0.01, 1.0, 1).unwrap();
        assert!(
            (b.tau_max - 0.005838).abs() < 2e-5,
            "tau_max = {}",
            b.tau_max
        );
        assert!(b.tau_max > 0.005 && b.tau_max < 0.0065);
    }

    #[test]
    fn second_order_bound_brackets_reported_thresholds() {
        let b = cfl_max_dt(0.7, 0.01, 1.0, 2).unwrap();
        assert!(
            (b.tau_max - 0.000413).abs() < 2e-6,
            "tau_max = {}",
            b.tau_max
        );
        assert!(b.tau_max > 0.0003 && b.tau_max < 0.0014);
    }

    #[test]
    fn formula_consistency_and_degenerate_speed() {
        for (alpha, order) in [(0.3, 1u8), (0.55, 2), (0.95, 1)] {
            let b = cfl_max_dt(alpha, 0.02, 1.7, order).unwrap();
            let tilde = 2.0 - 2.0f64.powf(1.0 - alpha);
            let lhs = order as f64 * gamma(2.0 - alpha) * b.tau_max.powf(alpha) * b.speed_sum / b.h;
            assert!((lhs - tilde).abs() < 1e-12);
        }
        assert!(cfl_max_dt(0.5, 0.01, 0.0, 1).unwrap().is_unbounded());
    }

    #[test]
    fn locus_passes_through_origin_at_theta_zero() {
        for alpha in [0.3, 0.8, 1.0] {
            let locus = boundary_locus(alpha, 25, 64).unwrap();
            assert!(locus.points[0].z.norm() < 1e-12, "alpha = {alpha}");
        }
    }

    #[test]
    fn alpha_one_locus_is_unit_circle_centered_at_one() {
        let locus = boundary_locus(1.0, 40, 128).unwrap();
        for p in &locus.points {
            let expected = Complex64::new(1.0 - p.theta.cos(), p.theta.sin());
            assert!((p.z - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn curves_nest_toward_a_limit() {
        let c10 = boundary_locus(0.8, 10, 256).unwrap().z_values();
        let c50 = boundary_locus(0.8, 50, 256).unwrap().z_values();
        let c100 = boundary_locus(0.8, 100, 256).unwrap().z_values();
        let d_10_50 = hausdorff_distance(&c10, &c50);
        let d_50_100 = hausdorff_distance(&c50, &c100);
        assert!(d_50_100 < d_10_50, "{d_50_100} vs {d_10_50}");
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(cfl_max_dt(0.5, -0.01, 1.0, 1).is_err());
        assert!(cfl_max_dt(0.5, 0.01, 1.0, 3).is_err());
        assert!(boundary_locus(0.5, 10, 4).is_err());
    }
}
