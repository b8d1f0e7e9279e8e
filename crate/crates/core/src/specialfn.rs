//! Special functions: gamma, log-gamma, and the Mittag-Leffler function
//! `E_a(z) = sum_n z^n / Gamma(a n + 1)`, which solves the linear fractional
//! ODE and supplies exact reference solutions for validation.

use crate::error::{Error, Result};

/// Lanczos coefficients, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments (Lanczos approximation, relative
/// accuracy well below 1e-13 on [1, 2], the range used by the L1 weights).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

/// Natural log of |Gamma(x)| for x > 0, evaluated in log space so that large
/// arguments (series terms with Gamma(a n + 1) for n in the hundreds) do not
/// overflow.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let refl = std::f64::consts::PI / (std::f64::consts::PI * x).sin();
        refl.abs().ln() - ln_gamma(1.0 - x)
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
    }
}

/// Truncation controls for the Mittag-Leffler series.
#[derive(Debug, Clone, Copy)]
pub struct MittagLefflerParams {
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Absolute term tolerance: summation stops once |term| < tol.
    pub tol: f64,
}

impl Default for MittagLefflerParams {
    fn default() -> Self {
        // Direct summation is supported for moderate arguments (|z| <= 10);
        // larger |z| fails the convergence check rather than returning junk.
        Self {
            max_terms: 400,
            tol: 1e-14,
        }
    }
}

/// One-parameter Mittag-Leffler function `E_a(z)` by direct series summation.
///
/// Terms are evaluated in log space (`exp(n ln|z| - ln Gamma(a n + 1))`), so
/// intermediate powers cannot overflow. Returns an error when the series has
/// not met the term tolerance within `params.max_terms`. For strongly negative
/// `z` the alternating series loses digits to cancellation; the solver only
/// needs moderate arguments.
pub fn mittag_leffler(alpha: f64, z: f64, params: &MittagLefflerParams) -> Result<f64> {
    check_alpha(alpha)?;
    if params.tol <= 0.0 || params.max_terms < 1 {
        return Err(Error::InvalidConfig(
            "mittag_leffler: tol must be > 0 and max_terms >= 1".into(),
        ));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let ln_abs_z = z.abs().ln();
    let mut sum = 1.0;
    for n in 1..=params.max_terms {
        let magnitude = (n as f64 * ln_abs_z - ln_gamma(alpha * n as f64 + 1.0)).exp();
        let term = if z < 0.0 && n % 2 == 1 {
            -magnitude
        } else {
            magnitude
        };
        sum += term;
        if magnitude < params.tol {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNotConverged {
        max_terms: params.max_terms,
    })
}

/// Exact solution `u(t) = u0 E_a(lambda t^a)` of the fractional ODE
/// `d^a/dt^a u = lambda u`, `u(0) = u0`.
pub fn fode_exact_solution(alpha: f64, lambda: f64, u0: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if t < 0.0 {
        return Err(Error::InvalidConfig(
            "fode_exact_solution: t must be >= 0".into(),
        ));
    }
    if t == 0.0 {
        return Ok(u0);
    }
    let z = lambda * t.powf(alpha);
    Ok(u0 * mittag_leffler(alpha, z, &MittagLefflerParams::default())?)
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    Ok(())
}
