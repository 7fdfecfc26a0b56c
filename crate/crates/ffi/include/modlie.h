#ifndef MODLIE_H
#define MODLIE_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum MlStatus {
  ML_OK = 0,
  ML_ERR_INVALID_ARGUMENT = 1,
  ML_ERR_PARSE = 2,
  ML_ERR_VERIFICATION = 3,
  ML_ERR_RESOURCE_GUARD = 4,
  ML_ERR_UTF8 = 5,
  ML_ERR_NULL_POINTER = 6,
} MlStatus;

/**
 * Opaque handle to a restricted Lie algebra.
 */
typedef struct MlAlgebra MlAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent error on this thread. The pointer
 * stays valid until the next failing call on the same thread; do not
 * free it.
 */
const char *ml_last_error_message(void);

/**
 * Constructs a simple restricted Lie algebra.
 *
 * `family` is one of "witt", "special", "hamiltonian", "contact", "sl",
 * "psl"; `n` is the family parameter and `p` the (prime) characteristic.
 * `max_dim` bounds the construction (pass 0 for the default of 2000).
 *
 * # Safety
 * `family` must be a valid NUL-terminated string and `out` a valid
 * pointer to receive the handle.
 */
enum MlStatus ml_algebra_construct(const char *family,
                                   uint32_t n,
                                   uint64_t p,
                                   uintptr_t max_dim,
                                   struct MlAlgebra **out);

/**
 * Parses an algebra from its structure-constant document.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid
 * pointer to receive the handle.
 */
enum MlStatus ml_algebra_parse(const char *text, struct MlAlgebra **out);

/**
 * Renders the canonical structure-constant document. The returned
 * string must be freed with `ml_string_free`.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum MlStatus ml_algebra_write(const struct MlAlgebra *alg, char **out);

/**
 * Dimension of the algebra (0 for a null handle).
 *
 * # Safety
 * `alg` must be a live handle or null.
 */
uint32_t ml_algebra_dim(const struct MlAlgebra *alg);

/**
 * Field characteristic (0 for a null handle).
 *
 * # Safety
 * `alg` must be a live handle or null.
 */
uint64_t ml_algebra_p(const struct MlAlgebra *alg);

/**
 * Runs the Jacobi, restrictedness, and simplicity gates.
 * Returns MlOk when all pass, MlErrVerification otherwise.
 *
 * # Safety
 * `alg` must be a live handle.
 */
enum MlStatus ml_algebra_verify(const struct MlAlgebra *alg, uint32_t samples, uint64_t seed);

/**
 * dim H^2 of the algebra. `max_dim` bounds the computation (0 for the
 * default of 300).
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum MlStatus ml_h2_dim(const struct MlAlgebra *alg, uintptr_t max_dim, uint32_t *out);

/**
 * dim H^2_* of the algebra, computed constructively with a verified
 * basis. `max_dim` as in `ml_h2_dim`.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum MlStatus ml_h2star_dim(const struct MlAlgebra *alg,
                            uintptr_t max_dim,
                            uint64_t seed,
                            uint32_t *out);

/**
 * Builds the restricted central extension by the Frobenius cocycle
 * (0, omega_i) for the 0-based basis index `i`, verifying all axioms.
 *
 * # Safety
 * `alg` must be a live handle and `out` a valid pointer.
 */
enum MlStatus ml_extend_frobenius(const struct MlAlgebra *alg, uint32_t i, struct MlAlgebra **out);

/**
 * Builds the explicit W(1) formula extension at characteristic p.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MlStatus ml_witt1_extension(uint64_t p, struct MlAlgebra **out);

/**
 * Releases an algebra handle (null is a no-op).
 *
 * # Safety
 * `alg` must be a handle returned by this library, not yet freed.
 */
void ml_algebra_free(struct MlAlgebra *alg);

/**
 * Releases a string returned by this library (null is a no-op).
 *
 * # Safety
 * `s` must be a string returned by this library, not yet freed.
 */
void ml_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODLIE_H */
