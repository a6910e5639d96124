#ifndef ADVREAL_H
#define ADVREAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Status codes; the numeric values match the command line exit codes.
 */
typedef enum AdvrStatus {
  ADVR_STATUS_OK = 0,
  ADVR_STATUS_INPUT_ERROR = 2,
  ADVR_STATUS_FUEL_EXHAUSTED = 3,
  ADVR_STATUS_ADVICE_SUSPECT = 4,
  ADVR_STATUS_NULL_POINTER = 5,
} AdvrStatus;

/**
 * Opaque exact rational matrix.
 */
typedef struct AdvrMatrix AdvrMatrix;

/**
 * Parse a matrix in the `rows cols` text format into a new handle.
 *
 * # Safety
 * `text` is a nul-terminated string; `out` is valid for one write.
 */
enum AdvrStatus advr_matrix_parse(const char *text, struct AdvrMatrix **out);

/**
 * # Safety
 * `m` is null or a handle from `advr_matrix_parse` not yet freed.
 */
void advr_matrix_free(struct AdvrMatrix *m);

/**
 * Row count; 0 for a null handle.
 *
 * # Safety
 * `m` is null or a live handle.
 */
size_t advr_matrix_rows(const struct AdvrMatrix *m);

/**
 * Column count; 0 for a null handle.
 *
 * # Safety
 * `m` is null or a live handle.
 */
size_t advr_matrix_cols(const struct AdvrMatrix *m);

/**
 * Rank given the advice that it is at most `upper`.
 *
 * # Safety
 * `m` is a live handle; `out` is valid for one write.
 */
enum AdvrStatus advr_rank(const struct AdvrMatrix *m,
                          size_t upper,
                          uint64_t fuel_steps,
                          size_t *out);

/**
 * Sorted eigenvalues with multiplicity within `2^-precision`, one per line.
 *
 * # Safety
 * `m` is a live handle; `out` is valid for one write.
 */
enum AdvrStatus advr_eigenvalues(const struct AdvrMatrix *m, uint32_t precision, char **out);

/**
 * Diagonalization given the number of distinct eigenvalues: `d` lines of
 * eigenvalues, then `d` lines of eigenvector entries.
 *
 * # Safety
 * `m` is a live handle; `out` is valid for one write.
 */
enum AdvrStatus advr_diag(const struct AdvrMatrix *m,
                          size_t count,
                          uint32_t precision,
                          uint64_t fuel_steps,
                          char **out);

/**
 * One eigenvector given `floor(log2)` of the least eigenspace dimension:
 * the eigenvalue line, then the vector line.
 *
 * # Safety
 * `m` is a live handle; `out` is valid for one write.
 */
enum AdvrStatus advr_evec(const struct AdvrMatrix *m,
                          uint32_t logmult,
                          uint32_t precision,
                          uint64_t fuel_steps,
                          char **out);

/**
 * Floor of the rational `x` given the parity of that floor (`odd` non-zero
 * for odd); written as a decimal integer.
 *
 * # Safety
 * `x` is a nul-terminated string; `out` is valid for one write.
 */
enum AdvrStatus advr_floor_parity(const char *x, int odd, char **out);

/**
 * Run the command line with `argv` (without the program name); standard
 * input reads as empty, so pass `--input`. The stdout payload goes to
 * `out`, also on failure, and the stderr text to the last-error slot.
 *
 * # Safety
 * `argv` holds `argc` nul-terminated strings; `out` is valid for one write.
 */
enum AdvrStatus advr_run(int argc, const char *const *argv, char **out);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *advr_last_error(void);

/**
 * # Safety
 * `s` is null or a string returned by this library, not yet freed.
 */
void advr_string_free(char *s);

#endif  /* ADVREAL_H */
