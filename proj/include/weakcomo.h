/* weakcomo: C API for the weak-comonotonicity toolkit.
 *
 * All functions return a wcm_status; results travel through out-parameters.
 * Handles are opaque and must be released with the matching _destroy call.
 * wcm_last_error() returns a thread-local message for the most recent
 * failure on the calling thread.
 */

#ifndef WEAKCOMO_H
#define WEAKCOMO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WCM_API __declspec(dllexport)
#else
#define WCM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wcm_status {
  WCM_OK = 0,
  WCM_ERR_PARSE,
  WCM_ERR_INVALID_ARGUMENT,
  WCM_ERR_EMPTY_SPACE,
  WCM_ERR_NEGATIVE_MASS,
  WCM_ERR_ZERO_TOTAL_MASS,
  WCM_ERR_NULL_EVENT,
  WCM_ERR_NEGATIVE_WEIGHT,
  WCM_ERR_DEGENERATE_NORMALIZER,
  WCM_ERR_SPACE_MISMATCH,
  WCM_ERR_DEGENERATE_TAIL,
  WCM_ERR_GRID_MISALIGNED,
  WCM_ERR_TIED_VALUES,
  WCM_ERR_CONTINUITY_SURROGATE,
  WCM_ERR_PARTITION_INFEASIBLE,
  WCM_ERR_DEGENERATE_VARIANCE,
  WCM_ERR_NULL_CONDITIONING_ATOM,
  WCM_ERR_TOO_LARGE,
  WCM_ERR_PRECONDITION,
  WCM_ERR_QUADRATURE,
  WCM_ERR_NUMERICAL,
  WCM_ERR_INTERNAL
} wcm_status;

WCM_API const char* wcm_version(void);
WCM_API const char* wcm_status_name(wcm_status status);

/* CLI exit-code class for a status: 0 ok, 2 input/parse, 3 precondition,
 * 4 numerical-consistency failure. */
WCM_API int wcm_status_exit_class(wcm_status status);

/* Message for the most recent error on this thread ("" if none). */
WCM_API const char* wcm_last_error(void);

/* ---- probability spaces and random variables --------------------------- */

typedef struct wcm_space wcm_space;
typedef struct wcm_rv wcm_rv;

/* Non-negative weights are renormalized to total mass 1. */
WCM_API wcm_status wcm_space_create(const double* probs, size_t count,
                                    wcm_space** out);
WCM_API void wcm_space_destroy(wcm_space* space);
WCM_API size_t wcm_space_atom_count(const wcm_space* space);
WCM_API wcm_status wcm_space_prob(const wcm_space* space, size_t atom,
                                  double* out);

WCM_API wcm_status wcm_rv_create(const wcm_space* space, const double* values,
                                 size_t count, wcm_rv** out);
WCM_API void wcm_rv_destroy(wcm_rv* rv);

/* ---- risk measures ------------------------------------------------------ */

WCM_API wcm_status wcm_var(const wcm_rv* x, double p, double* out);
WCM_API wcm_status wcm_es(const wcm_rv* x, double p, double* out);
WCM_API wcm_status wcm_left_q(const wcm_rv* x, double alpha, double* out);
WCM_API wcm_status wcm_grid_aligned(const wcm_space* space, double level,
                                    int* out);

/* ---- weak comonotonicity ------------------------------------------------ */

/* Integral of (X(w)-X(w'))(Y(w)-Y(w')) under pi1 x pi2. */
WCM_API wcm_status wcm_wc_rv(const wcm_rv* x, const wcm_rv* y,
                             const wcm_space* pi1, const wcm_space* pi2,
                             double* value);

WCM_API wcm_status wcm_strong_check(const wcm_rv* x, const wcm_rv* y,
                                    int* comonotonic, int* antimonotonic,
                                    int* injective_pair);

/* Conditional Pearson correlation given the event {atoms[0..count-1]}. */
WCM_API wcm_status wcm_cond_corr(const wcm_rv* x, const wcm_rv* y,
                                 const size_t* atoms, size_t count,
                                 double* out);

/* Y up_beta Z: weak comonotonicity over the union of tail families of Z. */
WCM_API wcm_status wcm_up_beta_check(const wcm_rv* y, const wcm_rv* z,
                                     double beta, int* out);

/* ---- aggregation --------------------------------------------------------- */

WCM_API wcm_status wcm_worst_var_two(const double* fx, const double* fy,
                                     size_t m, double p, double* out);
WCM_API wcm_status wcm_worst_es_two(const double* fx, const double* fy,
                                    size_t m, double p, double* out);

/* Writes the extremal coupling into x_out/y_out (each of length m). */
WCM_API wcm_status wcm_build_worst_coupling(const double* fx, const double* fy,
                                            size_t m, double p, double* x_out,
                                            double* y_out);

/* ---- risk sharing -------------------------------------------------------- */

WCM_API wcm_status wcm_sharing_gamma(const double* alphas, size_t n,
                                     double beta, double* out);

/* Solves the sharing problem for the equal-weight loss vector x_values.
 * parts_out must hold n*m doubles (row-major, one row per agent). */
WCM_API wcm_status wcm_sharing_solve(const double* x_values, size_t m,
                                     const double* alphas, size_t n,
                                     double beta, double* parts_out,
                                     double* objective_out);

/* ---- command layer -------------------------------------------------------
 * The CLI front end is a thin shell over these: each takes the command's
 * JSON configuration and yields a JSON report. Free the report with
 * wcm_string_free. On failure a JSON error object is still produced. */

WCM_API wcm_status wcm_run_command(const char* command,
                                   const char* config_json,
                                   char** report_json);
WCM_API void wcm_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* WEAKCOMO_H */
