//! Shared test oracles, independent of the library's solver paths.
//!
//! - adaptive Gauss-Kronrod (G7-K15) quadrature of the Caputo integral with
//!   the endpoint singularity split off analytically;
//! - classical (integer-order) upwind / MUSCL / implicit-upwind steppers,
//!   re-derived from scratch for the alpha = 1 reduction checks.

#![allow(dead_code)]

/// 15-point Kronrod nodes on [0, 1] side (symmetric), QUADPACK dqk15.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
/// 7-point Gauss weights for nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = WGK[7] * f(center);
    let mut gauss = WG[3] * f(center);
    for i in 0..7 {
        let dx = half * XGK[i];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * sum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * sum;
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half)
}

fn adaptive_gk(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: usize) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth >= 48 {
        return value;
    }
    let m = 0.5 * (a + b);
    adaptive_gk(f, a, m, 0.5 * tol, depth + 1) + adaptive_gk(f, m, b, 0.5 * tol, depth + 1)
}

/// Exact Caputo derivative at time `t` of a function with derivative `du`,
/// by adaptive Gauss-Kronrod quadrature (relative tolerance ~1e-10) of
///
/// ```text
/// (1/Gamma(1-a)) [ du(t) t^{1-a}/(1-a) + int_0^t (t-s)^{-a} (du(s)-du(t)) ds ]
/// ```
///
/// where the first term integrates the endpoint singularity analytically and
/// the remaining integrand is continuous.
pub fn caputo_exact(alpha: f64, t: f64, du: &dyn Fn(f64) -> f64) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0 && t > 0.0);
    let du_t = du(t);
    let singular = du_t * t.powf(1.0 - alpha) / (1.0 - alpha);
    // The integrand extends continuously by 0 at s = t (|du(s) - du(t)|
    // <= L (t - s) kills the kernel); guard the limit against fp rounding
    // of deeply subdivided nodes onto the endpoint.
    let integrand = move |s: f64| {
        if s >= t {
            return 0.0;
        }
        (t - s).powf(-alpha) * (du(s) - du_t)
    };
    let scale = singular.abs().max(1e-3);
    let smooth = adaptive_gk(&integrand, 0.0, t, 1e-10 * scale, 0);
    (singular + smooth) / caplaw::specialfn::gamma(1.0 - alpha)
}

/// Ghost policy for the classical oracles, re-derived independently.
#[derive(Clone, Copy)]
pub enum OracleBc {
    Periodic,
    Dirichlet { left: f64, right: f64 },
    Outflow,
}

fn pad2(u: &[f64], bc: OracleBc) -> Vec<f64> {
    let m = u.len() - 1;
    let (l2, l1, r1, r2) = match bc {
        OracleBc::Periodic => (u[m - 1], u[m], u[0], u[1]),
        OracleBc::Dirichlet { left, right } => (left, left, right, right),
        OracleBc::Outflow => (u[0], u[0], u[m], u[m]),
    };
    let mut p = Vec::with_capacity(u.len() + 4);
    p.push(l2);
    p.push(l1);
    p.extend_from_slice(u);
    p.push(r1);
    p.push(r2);
    p
}

/// Classical first-order upwind: `U_j - lam [df+ + df-]`, `lam = dt/h`.
pub fn classical_upwind_step(
    u: &[f64],
    fp: &dyn Fn(f64) -> f64,
    fm: &dyn Fn(f64) -> f64,
    lam: f64,
    bc: OracleBc,
) -> Vec<f64> {
    let p = pad2(u, bc);
    (0..u.len())
        .map(|j| {
            let i = j + 2;
            u[j] - lam * (fp(p[i]) - fp(p[i - 1]) + fm(p[i + 1]) - fm(p[i]))
        })
        .collect()
}

fn minmod_ratio(back: f64, forward: f64) -> f64 {
    if back == 0.0 {
        return 0.0;
    }
    let theta = forward / back;
    back * theta.clamp(0.0, 1.0)
}

/// Classical MUSCL with the minmod limiter, written against the interface
/// values of the per-cell linear reconstructions.
pub fn classical_muscl_step(
    u: &[f64],
    fp: &dyn Fn(f64) -> f64,
    fm: &dyn Fn(f64) -> f64,
    lam: f64,
    bc: OracleBc,
) -> Vec<f64> {
    let p = pad2(u, bc);
    let fpv: Vec<f64> = p.iter().map(|&v| fp(v)).collect();
    let fmv: Vec<f64> = p.iter().map(|&v| fm(v)).collect();
    let slope = |f: &[f64], i: usize| minmod_ratio(f[i] - f[i - 1], f[i + 1] - f[i]);
    (0..u.len())
        .map(|j| {
            let i = j + 2;
            let plus = (fpv[i] + 0.5 * slope(&fpv, i)) - (fpv[i - 1] + 0.5 * slope(&fpv, i - 1));
            let minus = (fmv[i + 1] - 0.5 * slope(&fmv, i + 1)) - (fmv[i] - 0.5 * slope(&fmv, i));
            u[j] - lam * (plus + minus)
        })
        .collect()
}

/// Classical implicit upwind for linear advection `a > 0` with a Dirichlet
/// inflow ghost: the system is lower triangular and forward substitution
/// solves it exactly: `U_j = (U^n_j + lam a U_{j-1}) / (1 + lam a)`.
pub fn classical_implicit_advection(
    u_prev: &[f64],
    speed: f64,
    lam: f64,
    left_ghost: f64,
) -> Vec<f64> {
    assert!(speed > 0.0);
    let c = lam * speed;
    let mut out = Vec::with_capacity(u_prev.len());
    let mut left = left_ghost;
    for &u in u_prev {
        let next = (u + c * left) / (1.0 + c);
        out.push(next);
        left = next;
    }
    out
}

/// Least-squares slope of ln(err) against ln(resolution), independent of the
/// library's fit.
pub fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xm = points.iter().map(|p| p.0.ln()).sum::<f64>() / n;
    let ym = points.iter().map(|p| p.1.ln()).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for p in points {
        num += (p.0.ln() - xm) * (p.1.ln() - ym);
        den += (p.0.ln() - xm) * (p.0.ln() - xm);
    }
    num / den
}
