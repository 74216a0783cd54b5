#ifndef LATTICE_EULER_H
#define LATTICE_EULER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Square orientations for field access.
 */
typedef enum LePlane {
  LE_PLANE_YZ = 0,
  LE_PLANE_ZX = 1,
  LE_PLANE_XY = 2,
} LePlane;

/**
 * Status codes returned by every fallible call.
 */
typedef enum LeStatus {
  LE_STATUS_OK = 0,
  LE_STATUS_NULL_POINTER = 1,
  LE_STATUS_INVALID_ARGUMENT = 2,
  LE_STATUS_INTEGRATOR_FAILURE = 3,
  LE_STATUS_SOLVER_FAILURE = 4,
} LeStatus;

/**
 * Opaque simulation handle.
 */
typedef struct LeSim LeSim;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a simulation. `integrator`: 0 = euler, 1 = rk4, 2 = midpoint.
 * `init` is a recipe string (`random`, `taylor_green`,
 * `single_mode:kx,ky,kz,plane`).  On success writes the handle to `out`.
 *
 * # Safety
 * `init` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum LeStatus le_sim_new(uintptr_t n,
                         double dt,
                         uint64_t seed,
                         uint32_t integrator,
                         double midpoint_tol,
                         const char *init,
                         struct LeSim **out);

/**
 * Advance the simulation by `steps` time steps.
 *
 * # Safety
 * `sim` must be a live handle from `le_sim_new`.
 */
enum LeStatus le_sim_step(struct LeSim *sim, uint64_t steps);

/**
 * Current simulation time.
 *
 * # Safety
 * `sim` live handle; `t` valid pointer.
 */
enum LeStatus le_sim_time(const struct LeSim *sim, double *t);

/**
 * Energy, helicity and conservation residuals of the current state, written
 * to a 4-element array [energy, helicity, (rhs,X), (rhs,DX)].
 *
 * # Safety
 * `sim` live handle; `out4` valid for 4 writes.
 */
enum LeStatus le_sim_diagnostics(const struct LeSim *sim, double *out4);

/**
 * Copy one orientation field of the state (N³ doubles, x-fastest) into `buf`.
 *
 * # Safety
 * `sim` live handle; `buf` valid for `len` writes.
 */
enum LeStatus le_sim_field(const struct LeSim *sim, enum LePlane plane, double *buf, uintptr_t len);

/**
 * Lattice period of the handle.
 *
 * # Safety
 * `sim` live handle; `n` valid pointer.
 */
enum LeStatus le_sim_period(const struct LeSim *sim, uintptr_t *n);

/**
 * Destroy a handle.  A null pointer is a no-op.
 *
 * # Safety
 * `sim` must be null or a handle not previously freed.
 */
void le_sim_free(struct LeSim *sim);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LATTICE_EULER_H */
