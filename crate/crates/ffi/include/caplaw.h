/* C interface to the caplaw fractional conservation-law solvers. */

#ifndef CAPLAW_H
#define CAPLAW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum CaplawStatus {
  CAPLAW_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  CAPLAW_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  CAPLAW_STATUS_UTF8 = 2,
  /**
   * Invalid configuration or argument (bad alpha, dt, preset name, ...).
   */
  CAPLAW_STATUS_INVALID_ARGUMENT = 3,
  /**
   * A caller-supplied buffer has the wrong length.
   */
  CAPLAW_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * An iteration failed to converge (series or implicit sweeps).
   */
  CAPLAW_STATUS_NOT_CONVERGED = 5,
  /**
   * The step produced a non-finite value (instability).
   */
  CAPLAW_STATUS_NON_FINITE = 6,
  /**
   * Unexpected internal failure.
   */
  CAPLAW_STATUS_INTERNAL = 7,
} CaplawStatus;

/**
 * Opaque solver handle: one configured run plus its full time history.
 */
typedef struct CaplawSolver CaplawSolver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread.
 */
const char *caplaw_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *caplaw_version(void);

/**
 * Gamma function (real arguments).
 */
double caplaw_gamma(double x);

/**
 * The level-independent most-recent L1 weight `2 - 2^{1-alpha}`.
 *
 * # Safety
 * `out` must point to a writable double.
 */
enum CaplawStatus caplaw_tilde_c(double alpha, double *out);

/**
 * L1 weights `c_0 .. c_{level-1}` for one time level. `len` must equal
 * `level`.
 *
 * # Safety
 * `out` must point to `len` writable doubles.
 */
enum CaplawStatus caplaw_caputo_weights(double alpha, size_t level, double *out, size_t len);

/**
 * Mittag-Leffler function `E_alpha(z)` with the default series controls.
 *
 * # Safety
 * `out` must point to a writable double.
 */
enum CaplawStatus caplaw_mittag_leffler(double alpha, double z, double *out);

/**
 * Exact fractional-ODE solution `u0 E_alpha(lambda t^alpha)`.
 *
 * # Safety
 * `out` must point to a writable double.
 */
enum CaplawStatus caplaw_fode_exact(double alpha, double lambda, double u0, double t, double *out);

/**
 * Backward Euler series for `d^a/dt^a u = lambda u`; writes `steps + 1`
 * levels (including `u0`). `len` must equal `steps + 1`.
 *
 * # Safety
 * `out` must point to `len` writable doubles.
 */
enum CaplawStatus caplaw_fode_backward_euler(double alpha,
                                             double lambda,
                                             double u0,
                                             double dt,
                                             size_t steps,
                                             double *out,
                                             size_t len);

/**
 * Largest explicit-stable time step for the modified CFL condition;
 * `order_factor` is 1 (first-order upwind) or 2 (MUSCL). A zero wave-speed
 * sum yields +infinity.
 *
 * # Safety
 * `out` must point to a writable double.
 */
enum CaplawStatus caplaw_cfl_max_dt(double alpha,
                                    double h,
                                    double speed_sum,
                                    uint8_t order_factor,
                                    double *out);

/**
 * Boundary locus of the fractional backward Euler stability region at
 * history length `n`, sampled at `samples` uniform angles. All three
 * buffers must hold `samples` doubles.
 *
 * # Safety
 * `theta`, `re_z`, `im_z` must each point to `samples` writable doubles.
 */
enum CaplawStatus caplaw_boundary_locus(double alpha,
                                        size_t n,
                                        size_t samples,
                                        double *theta,
                                        double *re_z,
                                        double *im_z);

/**
 * Total variation `sum |u_{j+1} - u_j|` of a sampled profile.
 *
 * # Safety
 * `values` must point to `len` readable doubles; `out` must be writable.
 */
enum CaplawStatus caplaw_total_variation(const double *values, size_t len, double *out);

/**
 * Create a solver from a JSON run configuration (the CLI schema; any
 * `out_dir` key is ignored — the C API never touches the filesystem).
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be writable.
 * A returned handle must be released with [`caplaw_solver_free`].
 */
enum CaplawStatus caplaw_solver_from_json(const char *json, struct CaplawSolver **out);

/**
 * Create a solver from a built-in preset name (see the CLI's `presets`).
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `out` must be writable.
 * A returned handle must be released with [`caplaw_solver_free`].
 */
enum CaplawStatus caplaw_solver_from_preset(const char *name, struct CaplawSolver **out);

/**
 * Advance one time level.
 *
 * # Safety
 * `solver` must be a live handle from a `caplaw_solver_from_*` call.
 */
enum CaplawStatus caplaw_solver_step(struct CaplawSolver *solver);

/**
 * Advance `steps` time levels (stops at the first failure).
 *
 * # Safety
 * `solver` must be a live handle from a `caplaw_solver_from_*` call.
 */
enum CaplawStatus caplaw_solver_advance(struct CaplawSolver *solver, size_t steps);

/**
 * Number of steps covering the configured `t_final`.
 *
 * # Safety
 * `solver` must be a live handle.
 */
size_t caplaw_solver_target_steps(const struct CaplawSolver *solver);

/**
 * Completed time levels.
 *
 * # Safety
 * `solver` must be a live handle.
 */
size_t caplaw_solver_level(const struct CaplawSolver *solver);

/**
 * Current simulated time.
 *
 * # Safety
 * `solver` must be a live handle.
 */
double caplaw_solver_time(const struct CaplawSolver *solver);

/**
 * Number of spatial nodes.
 *
 * # Safety
 * `solver` must be a live handle.
 */
size_t caplaw_solver_cell_count(const struct CaplawSolver *solver);

/**
 * Copy the current solution into `out` (`len` = cell count).
 *
 * # Safety
 * `solver` must be a live handle; `out` must hold `len` writable doubles.
 */
enum CaplawStatus caplaw_solver_state(const struct CaplawSolver *solver, double *out, size_t len);

/**
 * Copy the node coordinates into `out` (`len` = cell count).
 *
 * # Safety
 * `solver` must be a live handle; `out` must hold `len` writable doubles.
 */
enum CaplawStatus caplaw_solver_nodes(const struct CaplawSolver *solver, double *out, size_t len);

/**
 * Total variation of the current solution.
 *
 * # Safety
 * `solver` must be a live handle; `out` must be writable.
 */
enum CaplawStatus caplaw_solver_total_variation(const struct CaplawSolver *solver, double *out);

/**
 * Gauss-Seidel sweeps used by the most recent implicit step (0 otherwise).
 *
 * # Safety
 * `solver` must be a live handle.
 */
uint32_t caplaw_solver_last_sweeps(const struct CaplawSolver *solver);

/**
 * Release a solver handle. NULL is a no-op.
 *
 * # Safety
 * `solver` must be NULL or a live handle, and must not be used afterwards.
 */
void caplaw_solver_free(struct CaplawSolver *solver);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAPLAW_H */
