#ifndef VLALG_H
#define VLALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum VlalgStatus {
  VLALG_STATUS_OK = 0,
  /**
   * A check ran and found a violated axiom.
   */
  VLALG_STATUS_VIOLATION = 1,
  VLALG_STATUS_NULL_POINTER = 2,
  VLALG_STATUS_INVALID_UTF8 = 3,
  VLALG_STATUS_ARGUMENT = 4,
  VLALG_STATUS_PARSE = 5,
  VLALG_STATUS_DOMAIN = 6,
  VLALG_STATUS_CONSTRUCTION = 7,
  VLALG_STATUS_PRECONDITION = 8,
  VLALG_STATUS_TRUNCATION = 9,
  VLALG_STATUS_WORKSPACE = 10,
  VLALG_STATUS_PANIC = 11,
} VlalgStatus;

/**
 * A parsed or built algebra.
 */
typedef struct VlalgAlgebra VlalgAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *vlalg_last_error_message(void);

/**
 * Builds `Cur` (over sl2), `W`, `S` (χ = 0) or `H` in `dim` variables.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum VlalgStatus vlalg_builtin(const char *name, size_t dim, struct VlalgAlgebra **out);

/**
 * Loads a definition file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum VlalgStatus vlalg_load_file(const char *path, struct VlalgAlgebra **out);

/**
 * Parses definition-file contents held in memory.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum VlalgStatus vlalg_parse(const char *text, struct VlalgAlgebra **out);

/**
 * # Safety
 * `algebra` must come from this library and not have been freed; null is ignored.
 */
void vlalg_algebra_free(struct VlalgAlgebra *algebra);

/**
 * Canonical definition-file text of `algebra`, or null on a null handle.
 *
 * # Safety
 * `algebra` must be a live handle or null.
 */
char *vlalg_emit(const struct VlalgAlgebra *algebra);

/**
 * Runs the comma-separated `axioms` (e.g. `"skew,jacobi"`). `window` is the harmonic-degree
 * window of the light-cone checks and `l < 0` selects the default Borcherds integer.
 * Returns `VLALG_STATUS_OK` when everything holds and `VLALG_STATUS_VIOLATION` otherwise.
 * When `report_json` is non-null it receives the reports as JSON.
 *
 * # Safety
 * `algebra` must be a live handle, `axioms` a NUL-terminated string, and `report_json`
 * null or a valid pointer.
 */
enum VlalgStatus vlalg_check(const struct VlalgAlgebra *algebra,
                             const char *axioms,
                             uint32_t window,
                             int64_t l,
                             char **report_json);

/**
 * Dimension of the degree-`m` harmonic polynomials in `dim` variables.
 */
size_t vlalg_h_dim(size_t dim, uint32_t m);

/**
 * # Safety
 * `s` must come from this library and not have been freed; null is ignored.
 */
void vlalg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VLALG_H */
