//! C ABI over the `caplaw` solvers.
//!
//! Conventions: every fallible function returns a [`CaplawStatus`]; outputs
//! go through pointers supplied by the caller. `caplaw_last_error_message`
//! returns a thread-local, NUL-terminated description of the most recent
//! failure on the calling thread (valid until the next failing call there).
//! The solver handle is opaque; create it from a preset name or a JSON run
//! configuration (same schema as the CLI), step it, and read the state out.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use caplaw::harness::{presets, RunConfig, Solver};
use caplaw::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaplawStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Invalid configuration or argument (bad alpha, dt, preset name, ...).
    InvalidArgument = 3,
    /// A caller-supplied buffer has the wrong length.
    BufferTooSmall = 4,
    /// An iteration failed to converge (series or implicit sweeps).
    NotConverged = 5,
    /// The step produced a non-finite value (instability).
    NonFinite = 6,
    /// Unexpected internal failure.
    Internal = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> CaplawStatus {
    match err {
        Error::SeriesNotConverged { .. } | Error::SweepsExhausted { .. } => {
            CaplawStatus::NotConverged
        }
        Error::NonFinite { .. } | Error::CflExceeded { .. } => CaplawStatus::NonFinite,
        Error::Io(_) => CaplawStatus::Internal,
        _ => CaplawStatus::InvalidArgument,
    }
}

fn fail(err: &Error) -> CaplawStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Run `f` with panics converted into `Internal` so unwinding never crosses
/// the FFI boundary.
fn guarded(f: impl FnOnce() -> CaplawStatus) -> CaplawStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            CaplawStatus::Internal
        }
    }
}

/// Message describing the most recent failure on this thread.
#[no_mangle]
pub extern "C" fn caplaw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn caplaw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Gamma function (real arguments).
#[no_mangle]
pub extern "C" fn caplaw_gamma(x: f64) -> f64 {
    caplaw::specialfn::gamma(x)
}

/// The level-independent most-recent L1 weight `2 - 2^{1-alpha}`.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn caplaw_tilde_c(alpha: f64, out: *mut f64) -> CaplawStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| match caplaw::caputo::tilde_c(alpha) {
        Ok(v) => {
            unsafe { *out = v };
            CaplawStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// L1 weights `c_0 .. c_{level-1}` for one time level. `len` must equal
/// `level`.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn caplaw_caputo_weights(
    alpha: f64,
    level: usize,
    out: *mut f64,
    len: usize,
) -> CaplawStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        if len != level {
            set_error("weights buffer length must equal the level");
            return CaplawStatus::BufferTooSmall;
        }
        match caplaw::caputo::caputo_weights(alpha, level) {
            Ok(w) => {
                let dst = unsafe { std::slice::from_raw_parts_mut(out, len) };
                dst.copy_from_slice(w.weights());
                CaplawStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Mittag-Leffler function `E_alpha(z)` with the default series controls.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn caplaw_mittag_leffler(alpha: f64, z: f64, out: *mut f64) -> CaplawStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let params = caplaw::specialfn::MittagLefflerParams::default();
        match caplaw::specialfn::mittag_leffler(alpha, z, &params) {
            Ok(v) => {
                unsafe { *out = v };
                CaplawStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Exact fractional-ODE solution `u0 E_alpha(lambda t^alpha)`.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn caplaw_fode_exact(
    alpha: f64,
    lambda: f64,
    u0: f64,
    t: f64,
    out: *mut f64,
) -> CaplawStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(
        || match caplaw::specialfn::fode_exact_solution(alpha, lambda, u0, t) {
            Ok(v) => {
                unsafe { *out = v };
                CaplawStatus::Ok
            }
            Err(e) => fail(&e),
        },
    )
}

/// Backward Euler series for `d^a/dt^a u = lambda u`; writes `steps + 1`
/// levels (including `u0`). `len` must equal `steps + 1`.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn caplaw_fode_backward_euler(
    alpha: f64,
    lambda: f64,
    u0: f64,
    dt: f64,
    steps: usize,
    out: *mut f64,
    len: usize,
) -> CaplawStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        if len != steps + 1 {
            set_error("series buffer length must equal steps + 1");
            return CaplawStatus::BufferTooSmall;
        }
        match caplaw::schemes::fode_backward_euler(alpha, lambda, u0, dt, steps) {
            Ok(series) => {
                let dst = unsafe { std::slice::from_raw_parts_mut(out, len) };
                dst.copy_from_slice(&series);
                CaplawStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Largest explicit-stable time step for the modified CFL condition;
/// `order_factor` is 1 (first-order upwind) or 2 (MUSCL). A zero wave-speed
/// sum yields +infinity.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn caplaw_cfl_max_dt(
    alpha: f64,
    h: f64,
    speed_sum: f64,
    order_factor: u8,
    out: *mut f64,
) -> CaplawStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(
        || match caplaw::stability::cfl_max_dt(alpha, h, speed_sum, order_factor) {
            Ok(bound) => {
                unsafe { *out = bound.tau_max };
                CaplawStatus::Ok
            }
            Err(e) => fail(&e),
        },
    )
}

/// Boundary locus of the fractional backward Euler stability region at
/// history length `n`, sampled at `samples` uniform angles. All three
/// buffers must hold `samples` doubles.
///
/// # Safety
/// `theta`, `re_z`, `im_z` must each point to `samples` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn caplaw_boundary_locus(
    alpha: f64,
    n: usize,
    samples: usize,
    theta: *mut f64,
    re_z: *mut f64,
    im_z: *mut f64,
) -> CaplawStatus {
    if theta.is_null() || re_z.is_null() || im_z.is_null() {
        return null_pointer();
    }
    guarded(
        || match caplaw::stability::boundary_locus(alpha, n, samples) {
            Ok(locus) => {
                let theta = unsafe { std::slice::from_raw_parts_mut(theta, samples) };
                let re_z = unsafe { std::slice::from_raw_parts_mut(re_z, samples) };
                let im_z = unsafe { std::slice::from_raw_parts_mut(im_z, samples) };
                for (i, p) in locus.points.iter().enumerate() {
                    theta[i] = p.theta;
                    re_z[i] = p.z.re;
                    im_z[i] = p.z.im;
                }
                CaplawStatus::Ok
            }
            Err(e) => fail(&e),
        },
    )
}

/// Total variation `sum |u_{j+1} - u_j|` of a sampled profile.
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn caplaw_total_variation(
    values: *const f64,
    len: usize,
    out: *mut f64,
) -> CaplawStatus {
    if values.is_null() || out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let data = unsafe { std::slice::from_raw_parts(values, len) };
        unsafe { *out = caplaw::diagnostics::total_variation(data) };
        CaplawStatus::Ok
    })
}

/// Opaque solver handle: one configured run plus its full time history.
pub struct CaplawSolver {
    solver: Solver,
    target_steps: usize,
}

fn null_pointer() -> CaplawStatus {
    set_error("null pointer argument");
    CaplawStatus::NullPointer
}

fn build_solver(config: RunConfig, out: *mut *mut CaplawSolver) -> CaplawStatus {
    match Solver::from_run_config(&config) {
        Ok(solver) => {
            let handle = Box::new(CaplawSolver {
                solver,
                target_steps: config.n_steps(),
            });
            unsafe { *out = Box::into_raw(handle) };
            CaplawStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Create a solver from a JSON run configuration (the CLI schema; any
/// `out_dir` key is ignored — the C API never touches the filesystem).
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
/// A returned handle must be released with [`caplaw_solver_free`].
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_from_json(
    json: *const c_char,
    out: *mut *mut CaplawSolver,
) -> CaplawStatus {
    if json.is_null() || out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("configuration is not valid UTF-8");
                return CaplawStatus::Utf8;
            }
        };
        let mut config: RunConfig = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(e) => {
                set_error(&e.to_string());
                return CaplawStatus::InvalidArgument;
            }
        };
        config.out_dir = None;
        if let Err(e) = config.validate() {
            return fail(&e);
        }
        build_solver(config, out)
    })
}

/// Create a solver from a built-in preset name (see the CLI's `presets`).
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` must be writable.
/// A returned handle must be released with [`caplaw_solver_free`].
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_from_preset(
    name: *const c_char,
    out: *mut *mut CaplawSolver,
) -> CaplawStatus {
    if name.is_null() || out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let name = match unsafe { CStr::from_ptr(name) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("preset name is not valid UTF-8");
                return CaplawStatus::Utf8;
            }
        };
        let mut config = match presets::preset(name) {
            Ok(c) => c,
            Err(e) => return fail(&e),
        };
        config.out_dir = None;
        build_solver(config, out)
    })
}

/// Advance one time level.
///
/// # Safety
/// `solver` must be a live handle from a `caplaw_solver_from_*` call.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_step(solver: *mut CaplawSolver) -> CaplawStatus {
    if solver.is_null() {
        return null_pointer();
    }
    let handle = unsafe { &mut *solver };
    guarded(|| match handle.solver.step() {
        Ok(_) => CaplawStatus::Ok,
        Err(e) => fail(&e),
    })
}

/// Advance `steps` time levels (stops at the first failure).
///
/// # Safety
/// `solver` must be a live handle from a `caplaw_solver_from_*` call.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_advance(
    solver: *mut CaplawSolver,
    steps: usize,
) -> CaplawStatus {
    if solver.is_null() {
        return null_pointer();
    }
    let handle = unsafe { &mut *solver };
    guarded(|| {
        for _ in 0..steps {
            if let Err(e) = handle.solver.step() {
                return fail(&e);
            }
        }
        CaplawStatus::Ok
    })
}

/// Number of steps covering the configured `t_final`.
///
/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_target_steps(solver: *const CaplawSolver) -> usize {
    if solver.is_null() {
        return 0;
    }
    unsafe { &*solver }.target_steps
}

/// Completed time levels.
///
/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_level(solver: *const CaplawSolver) -> usize {
    if solver.is_null() {
        return 0;
    }
    unsafe { &*solver }.solver.level()
}

/// Current simulated time.
///
/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_time(solver: *const CaplawSolver) -> f64 {
    if solver.is_null() {
        return f64::NAN;
    }
    unsafe { &*solver }.solver.time()
}

/// Number of spatial nodes.
///
/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_cell_count(solver: *const CaplawSolver) -> usize {
    if solver.is_null() {
        return 0;
    }
    unsafe { &*solver }.solver.state().len()
}

/// Copy the current solution into `out` (`len` = cell count).
///
/// # Safety
/// `solver` must be a live handle; `out` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_state(
    solver: *const CaplawSolver,
    out: *mut f64,
    len: usize,
) -> CaplawStatus {
    if solver.is_null() || out.is_null() {
        return null_pointer();
    }
    let handle = unsafe { &*solver };
    guarded(|| {
        let state = handle.solver.state();
        if len != state.len() {
            set_error("state buffer length must equal the cell count");
            return CaplawStatus::BufferTooSmall;
        }
        unsafe { std::slice::from_raw_parts_mut(out, len) }.copy_from_slice(state);
        CaplawStatus::Ok
    })
}

/// Copy the node coordinates into `out` (`len` = cell count).
///
/// # Safety
/// `solver` must be a live handle; `out` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_nodes(
    solver: *const CaplawSolver,
    out: *mut f64,
    len: usize,
) -> CaplawStatus {
    if solver.is_null() || out.is_null() {
        return null_pointer();
    }
    let handle = unsafe { &*solver };
    guarded(|| {
        let grid = handle.solver.grid();
        if len != grid.cells {
            set_error("node buffer length must equal the cell count");
            return CaplawStatus::BufferTooSmall;
        }
        let dst = unsafe { std::slice::from_raw_parts_mut(out, len) };
        for (slot, x) in dst.iter_mut().zip(grid.nodes()) {
            *slot = x;
        }
        CaplawStatus::Ok
    })
}

/// Total variation of the current solution.
///
/// # Safety
/// `solver` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_total_variation(
    solver: *const CaplawSolver,
    out: *mut f64,
) -> CaplawStatus {
    if solver.is_null() || out.is_null() {
        return null_pointer();
    }
    let handle = unsafe { &*solver };
    guarded(|| {
        unsafe { *out = caplaw::diagnostics::total_variation(handle.solver.state()) };
        CaplawStatus::Ok
    })
}

/// Gauss-Seidel sweeps used by the most recent implicit step (0 otherwise).
///
/// # Safety
/// `solver` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_last_sweeps(solver: *const CaplawSolver) -> u32 {
    if solver.is_null() {
        return 0;
    }
    unsafe { &*solver }
        .solver
        .last_report()
        .map(|r| r.sweeps_used)
        .unwrap_or(0)
}

/// Release a solver handle. NULL is a no-op.
///
/// # Safety
/// `solver` must be NULL or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn caplaw_solver_free(solver: *mut CaplawSolver) {
    if !solver.is_null() {
        drop(unsafe { Box::from_raw(solver) });
    }
}
