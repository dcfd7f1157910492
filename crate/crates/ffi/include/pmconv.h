#ifndef PMCONV_H
#define PMCONV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  PM_STATUS_OK = 0,
  PM_STATUS_NULL_POINTER = 1,
  PM_STATUS_INVALID_UTF8 = 2,
  PM_STATUS_PARSE = 3,
  PM_STATUS_DOMAIN = 4,
  PM_STATUS_SCENARIO = 5,
  PM_STATUS_TRIVIAL_IDEAL = 6,
  PM_STATUS_UNKNOWN_CHECK = 7,
  PM_STATUS_CAP = 8,
  PM_STATUS_SEARCH = 9,
  PM_STATUS_PANIC = 10,
} PmStatus;

typedef struct PmDdf PmDdf;

typedef struct PmIdeal PmIdeal;

typedef struct PmScenario PmScenario;

typedef struct PmSet PmSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Free with
 * `pm_string_free`.
 */
char *pm_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void pm_string_free(char *s);

/**
 * Builds a d.d.f. from `n` steps; a location of `INFINITY` marks the step at
 * infinity. Doubles are converted exactly.
 *
 * # Safety
 * `locations` and `values` must point to `n` doubles; `result` must be valid.
 */
PmStatus pm_ddf_new(const double *locations, const double *values, size_t n, PmDdf **result);

/**
 * # Safety
 * `ddf` must be NULL or a handle from `pm_ddf_new`.
 */
void pm_ddf_free(PmDdf *ddf);

/**
 * Certified bracket `[lower, upper]` around the Lévy distance.
 *
 * # Safety
 * Handles and output pointers must be valid.
 */
PmStatus pm_levy_distance(const PmDdf *f,
                          const PmDdf *g,
                          double tolerance,
                          double *lower,
                          double *upper);

/**
 * Exact distance to the unit step at 0, rounded to a double.
 *
 * # Safety
 * Handle and output pointer must be valid.
 */
PmStatus pm_distance_to_identity(const PmDdf *g, double *result);

/**
 * Parses a set expression such as `ap:0,2 | finite:[3]`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `result` must be valid.
 */
PmStatus pm_set_parse(const char *expr, PmSet **result);

/**
 * Canonical text of a set. Free with `pm_string_free`.
 *
 * # Safety
 * `set` must be a valid handle.
 */
char *pm_set_to_string(const PmSet *set);

/**
 * # Safety
 * `set` must be NULL or a handle from `pm_set_parse`.
 */
void pm_set_free(PmSet *set);

/**
 * Parses an ideal expression such as `join(fin, powerset(ap:0,2))`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string; `result` must be valid.
 */
PmStatus pm_ideal_parse(const char *expr, PmIdeal **result);

/**
 * # Safety
 * `ideal` must be NULL or a handle from `pm_ideal_parse`.
 */
void pm_ideal_free(PmIdeal *ideal);

/**
 * # Safety
 * Handles and output pointer must be valid.
 */
PmStatus pm_ideal_contains(const PmIdeal *ideal, const PmSet *set, bool *result);

/**
 * # Safety
 * Handle and output pointer must be valid.
 */
PmStatus pm_ideal_is_nontrivial(const PmIdeal *ideal, bool *result);

/**
 * # Safety
 * Handle and output pointer must be valid.
 */
PmStatus pm_ideal_is_admissible(const PmIdeal *ideal, bool *result);

/**
 * Loads a scenario from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `result` must be valid.
 */
PmStatus pm_scenario_load(const char *json, PmScenario **result);

/**
 * # Safety
 * `scenario` must be NULL or a handle from `pm_scenario_load`.
 */
void pm_scenario_free(PmScenario *scenario);

/**
 * Runs the scenario's checks. `report` receives the JSON report (free with
 * `pm_string_free`) and `all_passed` the overall verdict.
 *
 * # Safety
 * Handle and output pointers must be valid.
 */
PmStatus pm_scenario_run(const PmScenario *scenario,
                         double tolerance,
                         uint32_t universe_size,
                         char **report,
                         bool *all_passed);

/**
 * Strong-`I` convergence of a scenario function to a named point.
 *
 * # Safety
 * Handle, strings and output pointer must be valid.
 */
PmStatus pm_scenario_strong_converges(const PmScenario *scenario,
                                      const char *function,
                                      const char *ideal,
                                      const char *point,
                                      bool *result);

/**
 * Strong-`I^K` convergence of a scenario function to a named point.
 *
 * # Safety
 * Handle, strings and output pointer must be valid.
 */
PmStatus pm_scenario_strong_ik_converges(const PmScenario *scenario,
                                         const char *function,
                                         const char *ideal_i,
                                         const char *ideal_k,
                                         const char *point,
                                         bool *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PMCONV_H */
