#ifndef PEKERIS_H
#define PEKERIS_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible entry point.
 */
typedef enum PkStatus {
  PK_STATUS_OK = 0,
  PK_STATUS_NULL_POINTER = 1,
  PK_STATUS_INVALID_ARGUMENT = 2,
  PK_STATUS_DOMAIN = 3,
  PK_STATUS_OUT_OF_RANGE = 4,
  PK_STATUS_EMPTY_SPECTRUM = 5,
  PK_STATUS_BUFFER_TOO_SMALL = 6,
  PK_STATUS_INTERNAL = 99,
} PkStatus;

typedef enum PkBranch {
  PK_BRANCH_PLUS = 0,
  PK_BRANCH_MINUS = 1,
} PkBranch;

typedef enum PkEquation {
  PK_EQUATION_KLEIN_GORDON = 0,
  PK_EQUATION_DIRAC = 1,
} PkEquation;

typedef enum PkRegime {
  PK_REGIME_NON_RELATIVISTIC = 0,
  PK_REGIME_RELATIVISTIC = 1,
} PkRegime;

/**
 * Opaque level table.
 */
typedef struct PkSpectrum PkSpectrum;

/**
 * Opaque thermodynamic sweep together with its detected peaks.
 */
typedef struct PkSweep PkSweep;

/**
 * Dimensionless system with its energy scales, as resolved from a preset name.
 */
typedef struct PkSystem {
  double alpha;
  double delta;
  double hbar_omega;
  double mass_energy;
} PkSystem;

/**
 * Heat-capacity maximum of a sweep.
 */
typedef struct PkPeak {
  double tc_kelvin;
  double tc_celsius;
  double c_peak;
} PkPeak;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *pk_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pk_version(void);

/**
 * Resolves a molecule name (`H2`, `LiH`, `HCl`, `CO`) or `electron-uv`.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `system` must be writable.
 */
enum PkStatus pk_preset(const char *name, struct PkSystem *system);

/**
 * Highest bound level of a branch. Writes `-1` when no level is bound.
 *
 * # Safety
 * `n_max` must be writable.
 */
enum PkStatus pk_nmax(double alpha, double delta, enum PkBranch branch_kind, int64_t *n_max);

/**
 * Reduced energy of level `n` on one branch.
 *
 * # Safety
 * `energy` must be writable.
 */
enum PkStatus pk_pekeris_energy(uint32_t n,
                                double alpha,
                                double delta,
                                enum PkBranch branch_kind,
                                double *energy);

/**
 * Quantum Morse level `n` (eV, measured from the dissociation limit) of a
 * shipped molecule.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `energy` must be writable.
 */
enum PkStatus pk_morse_lambda(const char *name, uint32_t n, double *energy);

/**
 * Builds the recast level table of one equation. `gamma_ratio` is
 * `hbar*omega / (m c^2)` and only matters in the relativistic regime.
 *
 * # Safety
 * `spectrum` must be writable. The handle must be released with [`pk_spectrum_free`].
 */
enum PkStatus pk_spectrum_new(double alpha,
                              double delta,
                              enum PkEquation equation,
                              enum PkRegime regime,
                              double gamma_ratio,
                              struct PkSpectrum **spectrum);

/**
 * # Safety
 * `spectrum` must be null or a handle from [`pk_spectrum_new`] not yet freed.
 */
void pk_spectrum_free(struct PkSpectrum *spectrum);

/**
 * Number of levels kept after filtering.
 *
 * # Safety
 * `spectrum` must be a live handle; `len` must be writable.
 */
enum PkStatus pk_spectrum_len(const struct PkSpectrum *spectrum, size_t *len);

/**
 * Copies the level energies, in units of the regime's energy scale, into
 * `buffer`. Fails with `BufferTooSmall` if `capacity` is short; the
 * required length is always written to `written`.
 *
 * # Safety
 * `buffer` must be valid for `capacity` writes; `written` must be writable.
 */
enum PkStatus pk_spectrum_energies(const struct PkSpectrum *spectrum,
                                   double *buffer,
                                   size_t capacity,
                                   size_t *written);

/**
 * Sweeps a log-spaced temperature grid `[t_min, t_max]` (K) and detects
 * heat-capacity peaks.
 *
 * # Safety
 * `spectrum` must be a live handle; `sweep` must be writable. The result
 * must be released with [`pk_sweep_free`].
 */
enum PkStatus pk_sweep_new(const struct PkSpectrum *spectrum,
                           double t_min,
                           double t_max,
                           size_t points_per_decade,
                           double hbar_omega,
                           struct PkSweep **sweep);

/**
 * # Safety
 * `sweep` must be null or a handle from [`pk_sweep_new`] not yet freed.
 */
void pk_sweep_free(struct PkSweep *sweep);

/**
 * Number of temperatures in the sweep.
 *
 * # Safety
 * `sweep` must be a live handle; `len` must be writable.
 */
enum PkStatus pk_sweep_len(const struct PkSweep *sweep, size_t *len);

/**
 * Copies the heat capacity (units of `k_B`) into `buffer`.
 *
 * # Safety
 * As for [`pk_spectrum_energies`].
 */
enum PkStatus pk_sweep_heat_capacity(const struct PkSweep *sweep,
                                     double *buffer,
                                     size_t capacity,
                                     size_t *written);

/**
 * Copies the sweep temperatures (K) into `buffer`.
 *
 * # Safety
 * As for [`pk_spectrum_energies`].
 */
enum PkStatus pk_sweep_temperatures(const struct PkSweep *sweep,
                                    double *buffer,
                                    size_t capacity,
                                    size_t *written);

/**
 * Copies detected peaks, ordered by temperature. `written` receives the
 * number of peaks even when the buffer is too small.
 *
 * # Safety
 * `peaks` must be valid for `capacity` writes; `written` must be writable.
 */
enum PkStatus pk_sweep_peaks(const struct PkSweep *sweep,
                             struct PkPeak *peaks,
                             size_t capacity,
                             size_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PEKERIS_H */
