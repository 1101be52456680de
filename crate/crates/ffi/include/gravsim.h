#ifndef GRAVSIM_H
#define GRAVSIM_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GravsimStatus {
  GRAVSIM_STATUS_OK = 0,
  GRAVSIM_STATUS_DOMAIN = 1,
  GRAVSIM_STATUS_EQUIVALENCE_PRINCIPLE = 2,
  GRAVSIM_STATUS_USAGE = 3,
  GRAVSIM_STATUS_CONFIG = 4,
  GRAVSIM_STATUS_BOUNDARY = 5,
  GRAVSIM_STATUS_ANALYSIS = 6,
  GRAVSIM_STATUS_SCHEMA = 7,
  GRAVSIM_STATUS_IO = 8,
  GRAVSIM_STATUS_NULL_POINTER = 9,
  GRAVSIM_STATUS_INVALID_UTF8 = 10,
  GRAVSIM_STATUS_PANIC = 11,
} GravsimStatus;

typedef enum GravsimFormat {
  GRAVSIM_FORMAT_CSV = 0,
  GRAVSIM_FORMAT_JSON = 1,
} GravsimFormat;

/**
 * Opaque gravimeter setup handle.
 */
typedef struct GravsimSetup GravsimSetup;

/**
 * Opaque species handle.
 */
typedef struct GravsimSpecies GravsimSpecies;

/**
 * Oracle parameters in scaled units (hbar = 1).
 */
typedef struct GravsimOracleParams {
  double m_i;
  double m_g;
  double g;
  double kappa;
  double t;
  double dt;
  size_t n_grid;
  double sigma0;
  double x0;
  double v0;
} GravsimOracleParams;

typedef struct GravsimOracleResult {
  /**
   * Extracted phase in (-pi, pi].
   */
  double phase;
  /**
   * `-(m_g/m_i) kappa g T^2`, unwrapped.
   */
  double analytic_phase;
  double deviation;
  double p_a;
  double p_b;
  double overlap_magnitude;
  double norm_error;
} GravsimOracleResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string the caller must not free.
 */
const char *gravsim_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Free with
 * [`gravsim_string_free`].
 */
char *gravsim_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void gravsim_string_free(char *s);

/**
 * Shipped species by label (`"Cs-133"`, `"Rb-87"`).
 *
 * # Safety
 * `label` must be a NUL-terminated string; `out` must be writable.
 */
enum GravsimStatus gravsim_species_preset(const char *label, struct GravsimSpecies **out);

/**
 * # Safety
 * `label` must be a NUL-terminated string; `out` must be writable.
 */
enum GravsimStatus gravsim_species_new(const char *label,
                                       double m_inertial_kg,
                                       double m_gravitational_kg,
                                       double nu0_hz,
                                       struct GravsimSpecies **out);

/**
 * # Safety
 * `species` must be NULL or a handle from this library not yet freed.
 */
void gravsim_species_free(struct GravsimSpecies *species);

/**
 * m_g / m_i.
 *
 * # Safety
 * `species` must be a live handle; `out` must be writable.
 */
enum GravsimStatus gravsim_species_ep_ratio(const struct GravsimSpecies *species, double *out);

/**
 * Resonant gravimeter launched from x = 0. The species is copied.
 *
 * # Safety
 * `species` must be a live handle; `out` must be writable.
 */
enum GravsimStatus gravsim_setup_new(const struct GravsimSpecies *species,
                                     double g,
                                     double kappa,
                                     double t,
                                     double initial_velocity,
                                     struct GravsimSetup **out);

/**
 * # Safety
 * `setup` must be NULL or a handle from this library not yet freed.
 */
void gravsim_setup_free(struct GravsimSetup *setup);

/**
 * `-(m_g/m_i) kappa g T^2` (rad).
 *
 * # Safety
 * `setup` must be a live handle; `out` must be writable.
 */
enum GravsimStatus gravsim_gravimeter_phase(const struct GravsimSetup *setup, double *out);

/**
 * De Broglie form; fails with `EQUIVALENCE_PRINCIPLE` unless m_g = m_i.
 *
 * # Safety
 * `setup` must be a live handle; `out` must be writable.
 */
enum GravsimStatus gravsim_phase_debroglie_form(const struct GravsimSetup *setup, double *out);

/**
 * Compton form; fails with `EQUIVALENCE_PRINCIPLE` unless m_g = m_i.
 *
 * # Safety
 * `setup` must be a live handle; `out` must be writable.
 */
enum GravsimStatus gravsim_phase_compton_form(const struct GravsimSetup *setup, double *out);

/**
 * Arm separation at t = T (m).
 *
 * # Safety
 * `setup` must be a live handle; `out` must be writable.
 */
enum GravsimStatus gravsim_separation(const struct GravsimSetup *setup, double *out);

/**
 * # Safety
 * `p_a` and `p_b` must be writable.
 */
enum GravsimStatus gravsim_output_populations(double phase,
                                              double visibility,
                                              double *p_a,
                                              double *p_b);

/**
 * `T g (x_a - x_b) / c^2` for two Cs clocks (s).
 *
 * # Safety
 * `out` must be writable.
 */
enum GravsimStatus gravsim_relative_dilation(double g,
                                             double x_a,
                                             double x_b,
                                             double duration,
                                             double *out);

/**
 * Gravitational phase between two photon paths `l` apart in height over `t` (rad).
 *
 * # Safety
 * `out` must be writable.
 */
enum GravsimStatus gravsim_photon_double_slit_phase(double nu,
                                                    double l,
                                                    double t,
                                                    double g,
                                                    double *out);

/**
 * m_i = m_g = 1, kappa = 10, g = 0.5, T = 1, dt = 1/2000, n_grid = 4096.
 */
struct GravsimOracleParams gravsim_oracle_params_standard(void);

/**
 * Runs the wave-packet interferometer.
 *
 * # Safety
 * `params` must be readable and `out` writable.
 */
enum GravsimStatus gravsim_oracle_run(const struct GravsimOracleParams *params,
                                      struct GravsimOracleResult *out);

/**
 * Runs a scenario body (or wrapped scenario file) given as JSON and returns
 * the rendered report through `out`; free it with [`gravsim_string_free`].
 * `kind` uses the CLI names, e.g. `"gravimeter"`.
 *
 * # Safety
 * `kind` and `scenario_json` must be NUL-terminated strings; `out` writable.
 */
enum GravsimStatus gravsim_run_scenario(const char *kind,
                                        const char *scenario_json,
                                        enum GravsimFormat format,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAVSIM_H */
