/* Copyright 2026 The deltakick Authors */
/* SPDX-License-Identifier: Apache-2.0 */

#ifndef DELTAKICK_H
#define DELTAKICK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DkStatus {
  DK_STATUS_OK = 0,
  DK_STATUS_NULL_POINTER = 1,
  DK_STATUS_INVALID_ARGUMENT = 2,
  DK_STATUS_INVALID_ENVIRONMENT = 3,
  DK_STATUS_INVALID_SCHEDULE = 4,
  DK_STATUS_TOO_MANY_KICKS = 5,
  DK_STATUS_SINGULAR = 6,
  DK_STATUS_DOMAIN = 7,
  DK_STATUS_IO = 8,
  DK_STATUS_PANIC = 9,
} DkStatus;

/**
 * A channel or a transition map.
 */
typedef struct DkChannel DkChannel;

/**
 * Gaussian environment seen by the kicks.
 */
typedef struct DkEnvironment DkEnvironment;

/**
 * Free qubit Hamiltonian axis, coupling axis and precession frequency.
 */
typedef struct DkGeometry DkGeometry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *dk_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *dk_version(void);

/**
 * Thermal single mode, optionally displaced by `disp_re + i disp_im`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum DkStatus dk_environment_thermal(double omega,
                                     double nbar,
                                     double disp_re,
                                     double disp_im,
                                     struct DkEnvironment **out);

/**
 * Uncorrelated kicks with per-kick variance `variance`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum DkStatus dk_environment_white(double variance, struct DkEnvironment **out);

/**
 * Tabulated kernel read from a text file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum DkStatus dk_environment_load_tabulated(const char *path, struct DkEnvironment **out);

/**
 * # Safety
 * `env` must be NULL or a handle from a `dk_environment_*` constructor, not yet freed.
 */
void dk_environment_free(struct DkEnvironment *env);

/**
 * `h` and `alpha` are unit 3-vectors; `omega` is the qubit precession frequency.
 *
 * # Safety
 * `h` and `alpha` must point to 3 doubles; `out` must be writable.
 */
enum DkStatus dk_geometry_new(const double *h,
                              const double *alpha,
                              double omega,
                              struct DkGeometry **out);

/**
 * # Safety
 * `geom` must be NULL or a handle from [`dk_geometry_new`], not yet freed.
 */
void dk_geometry_free(struct DkGeometry *geom);

/**
 * Exact channel after `n` kicks at `times`. `weights` may be NULL for unit weights.
 * `max_kicks` of 0 selects the library default.
 *
 * # Safety
 * `times` (and `weights` if non-NULL) must point to `n` doubles; handles must be live.
 */
enum DkStatus dk_channel_build(const struct DkEnvironment *env,
                               const struct DkGeometry *geom,
                               const double *times,
                               const double *weights,
                               size_t n,
                               size_t max_kicks,
                               struct DkChannel **out);

/**
 * Transition map `Θ` with `longer = Θ ∘ shorter`.
 *
 * # Safety
 * Both inputs must be live channel handles; `out` must be writable.
 */
enum DkStatus dk_channel_transition(const struct DkChannel *longer,
                                    const struct DkChannel *shorter,
                                    struct DkChannel **out);

/**
 * `later ∘ earlier`. The result is a channel only if both inputs are.
 *
 * # Safety
 * Both inputs must be live channel handles; `out` must be writable.
 */
enum DkStatus dk_channel_compose(const struct DkChannel *later,
                                 const struct DkChannel *earlier,
                                 struct DkChannel **out);

/**
 * # Safety
 * `ch` must be NULL or a live channel handle.
 */
void dk_channel_free(struct DkChannel *ch);

/**
 * Writes the Bloch matrix `A` (9 doubles, row-major) and offset `b` (3 doubles).
 *
 * # Safety
 * `a` must point to 9 writable doubles and `b` to 3.
 */
enum DkStatus dk_channel_affine(const struct DkChannel *ch, double *a, double *b);

/**
 * Writes the 4×4 process matrix in the handle's operator basis as separate real
 * and imaginary parts (16 doubles each, row-major).
 *
 * # Safety
 * `re` and `im` must each point to 16 writable doubles.
 */
enum DkStatus dk_channel_chi(const struct DkChannel *ch, double *re, double *im);

/**
 * Eigenvalues of the process matrix in descending order.
 *
 * # Safety
 * `out` must point to 4 writable doubles.
 */
enum DkStatus dk_channel_chi_eigenvalues(const struct DkChannel *ch, double *out);

/**
 * Maps a Bloch vector.
 *
 * # Safety
 * `u_in` must point to 3 readable doubles and `u_out` to 3 writable ones.
 */
enum DkStatus dk_channel_apply(const struct DkChannel *ch, const double *u_in, double *u_out);

/**
 * Complete positivity: smallest process-matrix eigenvalue `>= -tol`.
 *
 * # Safety
 * `out` must be writable.
 */
enum DkStatus dk_channel_is_cp(const struct DkChannel *ch, double tol, bool *out);

/**
 * Positivity on the Bloch ball by sampling `n_samples` pure states.
 * `seed` of 0 leaves the deterministic sphere grid unrotated.
 *
 * # Safety
 * `out` must be writable; `witness` may be NULL or point to 3 writable doubles,
 * which are set to a violating input when one is found.
 */
enum DkStatus dk_channel_is_positive(const struct DkChannel *ch,
                                     double tol,
                                     size_t n_samples,
                                     uint64_t seed,
                                     bool *out,
                                     double *witness);

/**
 * Text serialisation of the map; release with [`dk_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum DkStatus dk_channel_to_text(const struct DkChannel *ch, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void dk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELTAKICK_H */
