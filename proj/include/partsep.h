/* C interface to the partial-separability inequality toolkit.
 *
 * All functions returning partsep_status set a thread-local message
 * retrievable with partsep_last_error() on failure. Strings returned through
 * char** out-parameters are heap-allocated JSON documents; release them with
 * partsep_buffer_free(). Handles are opaque; release them with the matching
 * *_free() function.
 */
#ifndef PARTSEP_H
#define PARTSEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PARTSEP_API __declspec(dllexport)
#else
#define PARTSEP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum partsep_status {
    PARTSEP_OK = 0,
    PARTSEP_ERROR_INVALID_ARGUMENT = 1,
    PARTSEP_ERROR_PARSE = 2,
    PARTSEP_ERROR_VALIDATION = 3,
    PARTSEP_ERROR_CAPACITY = 4,
    PARTSEP_ERROR_INTERNAL = 5
} partsep_status;

/* Coefficient (sign) tensor over all 2^n setting choices. */
typedef struct partsep_coeffs partsep_coeffs;
/* Partially separable hidden-variable model. */
typedef struct partsep_model partsep_model;

PARTSEP_API const char* partsep_version(void);
PARTSEP_API const char* partsep_status_name(partsep_status status);
/* Message describing the most recent failure on this thread ("" if none). */
PARTSEP_API const char* partsep_last_error(void);
PARTSEP_API void partsep_buffer_free(char* buffer);

/* ---- coefficient tensors ---- */

/* variant is "plus" or "minus". */
PARTSEP_API partsep_status partsep_coeffs_alternating(int32_t n, const char* variant,
                                                      partsep_coeffs** out);
PARTSEP_API partsep_status partsep_coeffs_from_json(const char* text,
                                                    partsep_coeffs** out);
PARTSEP_API partsep_status partsep_coeffs_to_json(const partsep_coeffs* coeffs,
                                                  char** json_out);
/* CSV table: one row per setting choice, columns i1..in, t, sign. */
PARTSEP_API partsep_status partsep_coeffs_to_csv(const partsep_coeffs* coeffs,
                                                 char** csv_out);
/* Particle count, or -1 on a null handle. */
PARTSEP_API int32_t partsep_coeffs_n(const partsep_coeffs* coeffs);
/* Sign (+1/-1) at an encoded setting index, or 0 on error. */
PARTSEP_API int32_t partsep_coeffs_sign(const partsep_coeffs* coeffs, uint64_t index);
PARTSEP_API void partsep_coeffs_free(partsep_coeffs* coeffs);

/* ---- hybrid hidden-variable bounds ---- */

/* Exact bound report for one bipartition (subset = 1-based particle indices
 * of one cluster). */
PARTSEP_API partsep_status partsep_bound_report(const partsep_coeffs* coeffs,
                                                const int32_t* subset,
                                                size_t subset_len, char** json_out);
/* Bound reports for every bipartition class. */
PARTSEP_API partsep_status partsep_bound_report_all(const partsep_coeffs* coeffs,
                                                    char** json_out);
/* Exhaustive minimax over all sign tensors; n <= 4. */
PARTSEP_API partsep_status partsep_minimax_report(int32_t n, char** json_out);
/* Solutions of the binomial sign conditions for block size p. */
PARTSEP_API partsep_status partsep_mu_report(int32_t n, int32_t p, char** json_out);

/* ---- quantum violation ---- */

/* angles_json: NULL for the closed-form optimal angles, otherwise an angle
 * document {"n", "angles": [[a1, a2] x n]}. */
PARTSEP_API partsep_status partsep_violation_report(int32_t n, const char* variant,
                                                    int32_t ghz_sign,
                                                    const char* angles_json,
                                                    char** json_out);
/* Multi-start numerical search over the 2n angles. */
PARTSEP_API partsep_status partsep_violation_optimize_report(
    int32_t n, const char* variant, int32_t ghz_sign, int32_t restarts,
    uint64_t seed, char** json_out);

/* ---- hidden-variable models and measurement data ---- */

PARTSEP_API partsep_status partsep_model_from_json(const char* text,
                                                   partsep_model** out);
PARTSEP_API void partsep_model_free(partsep_model* model);
/* OK and *diagnostic_out = NULL when valid; PARTSEP_ERROR_VALIDATION and a
 * diagnostic naming the first violated constraint otherwise. */
PARTSEP_API partsep_status partsep_model_validate(const partsep_model* model,
                                                  char** diagnostic_out);
/* Sample every setting choice; returns counts, estimated correlations and
 * both inequality sums. */
PARTSEP_API partsep_status partsep_simulate_model(const partsep_model* model,
                                                  uint64_t shots, uint64_t seed,
                                                  char** json_out);
/* Sample a GHZ state measured along in-plane directions (angles_json NULL for
 * the optimal angles of the given variant). */
PARTSEP_API partsep_status partsep_simulate_ghz(int32_t n, int32_t ghz_sign,
                                                const char* variant,
                                                const char* angles_json,
                                                uint64_t shots, uint64_t seed,
                                                char** json_out);
/* Certification report for a counts document: evaluates both alternating
 * inequalities against the estimated correlations. */
PARTSEP_API partsep_status partsep_certify(const char* counts_json, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* PARTSEP_H */
