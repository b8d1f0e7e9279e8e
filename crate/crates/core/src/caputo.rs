//! L1 discretization of the Caputo derivative.
//!
//! On a uniform time grid `t^k = k dt` the discrete operator reads
//!
//! ```text
//! D u^{n+1} = (U^{n+1} - sum_{k=0}^{n} c_k^{n+1} U^k) / (Gamma(2-a) dt^a),
//! ```
//!
//! where the convolution weights `c_k^{n+1}` are positive, sum to one, and
//! grow toward the most recent level: the fractional derivative is the rate
//! of change against a convex combination of the full history. The last
//! weight `c_n^{n+1} = 2 - 2^{1-a}` is level-independent and drives the
//! modified CFL conditions.

use crate::error::{Error, Result};
use crate::specialfn::{check_alpha, gamma};

/// Convolution weights `c_0 .. c_n` for one time level `n+1` and one alpha.
#[derive(Debug, Clone)]
pub struct CaputoWeights {
    pub alpha: f64,
    /// Time index `n+1`: number of completed steps plus one.
    pub level: usize,
    weights: Vec<f64>,
}

impl CaputoWeights {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn last(&self) -> f64 {
        *self.weights.last().expect("weights are never empty")
    }
}

/// The level-independent most-recent weight `2 - 2^{1-a}`.
///
/// Equals the last entry of [`caputo_weights`] for any level >= 2. It tends
/// to zero as `a -> 0`, which is what blows up the explicit CFL bounds.
pub fn tilde_c(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(2.0 - 2.0f64.powf(1.0 - alpha))
}

/// Build the L1 weights for a given level.
///
/// For `a = 1` the formulas degenerate (`0^0` terms); the classical time
/// derivative is restored exactly by the explicit branch `(0, ..., 0, 1)`.
pub fn caputo_weights(alpha: f64, level: usize) -> Result<CaputoWeights> {
    check_alpha(alpha)?;
    if level < 1 {
        return Err(Error::InvalidLevel { level });
    }
    let mut weights = Vec::with_capacity(level);
    fill_weights(alpha, level, &mut weights);
    Ok(CaputoWeights {
        alpha,
        level,
        weights,
    })
}

/// Weight computation with a caller-provided buffer, used by the per-cell
/// variable-alpha paths where a fresh allocation per cell would dominate.
pub(crate) fn fill_weights(alpha: f64, level: usize, out: &mut Vec<f64>) {
    out.clear();
    if alpha == 1.0 {
        out.resize(level, 0.0);
        out[level - 1] = 1.0;
        return;
    }
    // c_0 = (n+1)^e - n^e and c_k = 2(n+1-k)^e - (n+2-k)^e - (n-k)^e with
    // e = 1 - a; march k upward carrying the three adjacent powers so each
    // entry costs a single powf.
    let n = level - 1;
    let e = 1.0 - alpha;
    let pow = |m: usize| (m as f64).powf(e);
    let mut hi = pow(n + 1);
    let mut mid = pow(n);
    out.push(hi - mid);
    for k in 1..=n {
        let lo = pow(n - k);
        out.push(2.0 * mid - hi - lo);
        hi = mid;
        mid = lo;
    }
}

/// Full time history of the discrete solution: levels `U^0 .. U^n`, all with
/// the same spatial length, append-only.
#[derive(Debug, Clone)]
pub struct HistoryBuffer {
    levels: Vec<Vec<f64>>,
    dt: f64,
    cells: usize,
}

impl HistoryBuffer {
    pub fn new(initial: Vec<f64>, dt: f64) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::InvalidConfig(
                "history requires at least one cell".into(),
            ));
        }
        if !(dt > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "dt must be positive, got {dt}"
            )));
        }
        let cells = initial.len();
        Ok(Self {
            levels: vec![initial],
            dt,
            cells,
        })
    }

    /// Append the next time level. Earlier levels are never mutated.
    pub fn push(&mut self, level: Vec<f64>) -> Result<()> {
        if level.len() != self.cells {
            return Err(Error::DimensionMismatch {
                expected: self.cells,
                got: level.len(),
            });
        }
        self.levels.push(level);
        Ok(())
    }

    /// Number of stored levels (`n + 1` when `U^0 .. U^n` are present).
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructed with U^0; never empty
    }

    pub fn level(&self, k: usize) -> &[f64] {
        &self.levels[k]
    }

    pub fn last(&self) -> &[f64] {
        self.levels.last().expect("history holds at least U^0")
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.levels.iter().map(|v| v.as_slice())
    }
}

/// Memory term `sum_k c_k^{n+1} U_cell^k` at a single cell: the convex
/// combination of history values the next level is measured against.
pub fn caputo_memory_term(
    history: &HistoryBuffer,
    weights: &CaputoWeights,
    cell: usize,
) -> Result<f64> {
    if weights.level != history.len() {
        return Err(Error::DimensionMismatch {
            expected: history.len(),
            got: weights.level,
        });
    }
    if cell >= history.cell_count() {
        return Err(Error::CellOutOfRange {
            cell,
            cells: history.cell_count(),
        });
    }
    Ok(weights
        .weights()
        .iter()
        .zip(history.iter())
        .map(|(w, level)| w * level[cell])
        .sum())
}

/// Memory term for all cells, accumulated level-by-level (contiguous reads).
pub(crate) fn memory_term_into(history: &HistoryBuffer, weights: &[f64], out: &mut [f64]) {
    out.fill(0.0);
    for (w, level) in weights.iter().zip(history.iter()) {
        if *w == 0.0 {
            continue;
        }
        for (o, u) in out.iter_mut().zip(level.iter()) {
            *o += w * u;
        }
    }
}

/// Apply the discrete fractional operator to a candidate next level:
/// `(candidate - memory) / (Gamma(2-a) dt^a)` cellwise.
pub fn caputo_apply(
    history: &HistoryBuffer,
    candidate_next: &[f64],
    alpha: f64,
    dt: f64,
) -> Result<Vec<f64>> {
    if candidate_next.len() != history.cell_count() {
        return Err(Error::DimensionMismatch {
            expected: history.cell_count(),
            got: candidate_next.len(),
        });
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let weights = caputo_weights(alpha, history.len())?;
    let scale = 1.0 / (gamma(2.0 - alpha) * dt.powf(alpha));
    let mut mem = vec![0.0; history.cell_count()];
    memory_term_into(history, weights.weights(), &mut mem);
    Ok(candidate_next
        .iter()
        .zip(mem.iter())
        .map(|(c, m)| (c - m) * scale)
        .collect())
}
