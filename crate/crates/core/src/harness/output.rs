//! CSV emitters. All numeric output carries 17 significant digits so runs
//! are reproducible bit-for-bit from the files alone.

use std::fmt::Write as _;
use std::path::Path;

use crate::diagnostics::DiagnosticsRecord;
use crate::error::Result;
use crate::stability::BoundaryLocus;

/// Format with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `(x, u)` pairs of one solution snapshot.
pub fn write_snapshot(path: &Path, xs: &[f64], u: &[f64]) -> Result<()> {
    let mut s = String::from("x,u\n");
    for (x, v) in xs.iter().zip(u.iter()) {
        let _ = writeln!(s, "{},{}", fmt17(*x), fmt17(*v));
    }
    std::fs::write(path, s)?;
    Ok(())
}

/// Per-level diagnostics stream.
pub fn write_diagnostics(path: &Path, records: &[DiagnosticsRecord]) -> Result<()> {
    let mut s = String::from("level,t,tv,l1,l2sq,entropy,min,max\n");
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.level,
            fmt17(r.t),
            fmt17(r.tv),
            fmt17(r.l1_norm),
            fmt17(r.l2_norm_sq),
            fmt17(r.entropy_l2),
            fmt17(r.min_val),
            fmt17(r.max_val),
        );
    }
    std::fs::write(path, s)?;
    Ok(())
}

/// Boundary-locus curve as `(theta, re_z, im_z)` rows.
pub fn write_locus(path: &Path, locus: &BoundaryLocus) -> Result<()> {
    let mut s = String::from("theta,re_z,im_z\n");
    for p in &locus.points {
        let _ = writeln!(s, "{},{},{}", fmt17(p.theta), fmt17(p.z.re), fmt17(p.z.im));
    }
    std::fs::write(path, s)?;
    Ok(())
}
