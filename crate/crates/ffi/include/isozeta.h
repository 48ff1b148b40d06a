#ifndef ISOZETA_H
#define ISOZETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>
#include <stddef.h>

/**
 * Status codes.
 */
typedef enum IsozetaStatus {
  ISOZETA_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  ISOZETA_STATUS_NULL_POINTER = 1,
  /**
   * Parameters violate a documented constraint.
   */
  ISOZETA_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An internal consistency check failed.
   */
  ISOZETA_STATUS_INTERNAL = 3,
  /**
   * The request is outside what is implemented.
   */
  ISOZETA_STATUS_UNSUPPORTED = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  ISOZETA_STATUS_INVALID_UTF8 = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  ISOZETA_STATUS_PANIC = 6,
  /**
   * Any other failure.
   */
  ISOZETA_STATUS_OTHER = 7,
} IsozetaStatus;

/**
 * A supersingular isogeny graph with its Brandt matrix.
 */
typedef struct IsozetaGraph IsozetaGraph;

/**
 * A verification report.
 */
typedef struct IsozetaReport IsozetaReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *isozeta_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void isozeta_string_free(char *s);

/**
 * Builds `X_p^q(N)` and its Brandt matrix `B_p`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum IsozetaStatus isozeta_graph_build(uint64_t p,
                                       uint64_t q,
                                       uint64_t n,
                                       uint64_t seed,
                                       struct IsozetaGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from [`isozeta_graph_build`] not yet freed.
 */
void isozeta_graph_free(struct IsozetaGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IsozetaStatus isozeta_graph_vertex_count(const struct IsozetaGraph *g, uintptr_t *out);

/**
 * Entry `(i, j)` of the Brandt matrix.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IsozetaStatus isozeta_graph_brandt_entry(const struct IsozetaGraph *g,
                                              uintptr_t i,
                                              uintptr_t j,
                                              int64_t *out);

/**
 * `2χ` of the graph.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum IsozetaStatus isozeta_graph_euler_char_times_2(const struct IsozetaGraph *g, int64_t *out);

/**
 * Serializes the graph as `"json"`, `"dot"` or `"csv"`.
 *
 * # Safety
 * `g` must be a live handle, `format` a NUL-terminated string and `out`
 * writable. The result must be released with [`isozeta_string_free`].
 */
enum IsozetaStatus isozeta_graph_export(const struct IsozetaGraph *g,
                                        const char *format,
                                        char **out);

/**
 * Runs every identity check for `(p, q, N)`. A report is produced even when
 * checks fail; query it with [`isozeta_report_passed`].
 *
 * # Safety
 * `out` must be writable.
 */
enum IsozetaStatus isozeta_verify(uint64_t p,
                                  uint64_t q,
                                  uint64_t n,
                                  uint64_t seed,
                                  struct IsozetaReport **out);

/**
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum IsozetaStatus isozeta_report_passed(const struct IsozetaReport *r, bool *out);

/**
 * The report as JSON.
 *
 * # Safety
 * `r` must be a live handle and `out` writable. Release the result with
 * [`isozeta_string_free`].
 */
enum IsozetaStatus isozeta_report_json(const struct IsozetaReport *r, char **out);

/**
 * # Safety
 * `r` must be null or a handle from [`isozeta_verify`] not yet freed.
 */
void isozeta_report_free(struct IsozetaReport *r);

/**
 * Characteristic polynomial of `T_ℓ` on the plus part of `S₂(Γ₀(M))` as JSON
 * `{"level": M, "ell": ℓ, "charpoly": [...]}`, coefficients ascending.
 *
 * # Safety
 * `out` must be writable. Release the result with [`isozeta_string_free`].
 */
enum IsozetaStatus isozeta_hecke_charpoly_json(uint64_t level, uint64_t ell, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ISOZETA_H */
