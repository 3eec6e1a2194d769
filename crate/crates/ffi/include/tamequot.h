#ifndef TAMEQUOT_H
#define TAMEQUOT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum TqStatus {
  TQ_STATUS_OK = 0,
  TQ_STATUS_NOT_PRIME = 1,
  TQ_STATUS_NO_SUCH_ROOT = 2,
  TQ_STATUS_TAME_VIOLATION = 3,
  TQ_STATUS_DOMAIN_MISMATCH = 4,
  TQ_STATUS_INVALID_ENDOMORPHISM = 5,
  TQ_STATUS_NOT_FINITE_ORDER = 6,
  TQ_STATUS_NOT_DIAGONALIZABLE = 7,
  TQ_STATUS_PINNED_INCONSISTENT = 8,
  TQ_STATUS_LENGTH_MISMATCH = 9,
  TQ_STATUS_NOT_GALOIS_WEIGHTS = 10,
  TQ_STATUS_INVALID_WEIGHTS = 11,
  TQ_STATUS_COMPONENT_MISMATCH = 12,
  TQ_STATUS_ARITY_MISMATCH = 13,
  TQ_STATUS_NOT_A_RING_MAP = 14,
  TQ_STATUS_NOT_Q_GROUP = 15,
  TQ_STATUS_TOO_LARGE = 16,
  TQ_STATUS_INVALID_INPUT = 17,
  TQ_STATUS_NULL_POINTER = 100,
  TQ_STATUS_INVALID_UTF8 = 101,
  TQ_STATUS_OUT_OF_RANGE = 102,
  TQ_STATUS_BUFFER_TOO_SMALL = 103,
  TQ_STATUS_PANIC = 199,
} TqStatus;

/**
 * Opaque stratified model.
 */
typedef struct TqModel TqModel;

/**
 * Opaque presentation of an invariant ring.
 */
typedef struct TqPresentation TqPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Stable name of a status code, e.g. `"NotPrime"`. Never null.
 */
const char *tq_status_name(enum TqStatus status);

/**
 * Message of the last failure on this thread, or null. Valid until the next
 * call into the library from the same thread.
 */
const char *tq_last_error_message(void);

/**
 * Releases a string returned by the library. Accepts null.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void tq_string_free(char *s);

/**
 * Smallest residue of exact multiplicative order `r` in `F_p`.
 *
 * # Safety
 * `out` must be null or valid for a write.
 */
enum TqStatus tq_primitive_root(uint64_t p, uint64_t r, uint64_t *out);

/**
 * Presents the invariant ring of `mu_r` acting with the given weights.
 *
 * # Safety
 * `weights` must point to `len` values; `out` must be valid for a write.
 */
enum TqStatus tq_presentation_new(uint64_t r,
                                  const uint64_t *weights,
                                  size_t len,
                                  struct TqPresentation **out);

/**
 * # Safety
 * `p` must be null or a handle from [`tq_presentation_new`] not yet freed.
 */
void tq_presentation_free(struct TqPresentation *p);

/**
 * Number of invariant monomial generators; 0 for null.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t tq_presentation_generator_count(const struct TqPresentation *p);

/**
 * Number of binomial relations; 0 for null.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t tq_presentation_relation_count(const struct TqPresentation *p);

/**
 * Number of coordinates `t, x_1, ..., x_n`; 0 for null.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t tq_presentation_arity(const struct TqPresentation *p);

/**
 * Index of the uniformizer generator, or -1 when there is none.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
int64_t tq_presentation_uniformizer(const struct TqPresentation *p);

/**
 * Writes the exponent vector of generator `index` into `exps`, which holds
 * `cap` entries and must fit the arity.
 *
 * # Safety
 * `p` must be a live handle and `exps` valid for `cap` writes.
 */
enum TqStatus tq_presentation_generator(const struct TqPresentation *p,
                                        size_t index,
                                        uint32_t *exps,
                                        size_t cap);

/**
 * Writes relation `index` as two generator exponent vectors, each of length
 * [`tq_presentation_generator_count`].
 *
 * # Safety
 * `p` must be a live handle; `lhs` and `rhs` valid for `cap` writes.
 */
enum TqStatus tq_presentation_relation(const struct TqPresentation *p,
                                       size_t index,
                                       uint32_t *lhs,
                                       uint32_t *rhs,
                                       size_t cap);

/**
 * Presentation as JSON; release with [`tq_string_free`]. Null on null input.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
char *tq_presentation_json(const struct TqPresentation *p);

/**
 * Builds a model from a description such as `"affine:1,torus:1"`.
 *
 * # Safety
 * `description` must be a C string, `weights` point to `len` values and `out`
 * be valid for a write.
 */
enum TqStatus tq_model_new(const char *description,
                           uint64_t r,
                           const uint64_t *weights,
                           size_t len,
                           struct TqModel **out);

/**
 * # Safety
 * `m` must be null or a handle from [`tq_model_new`] not yet freed.
 */
void tq_model_free(struct TqModel *m);

/**
 * Compares the Serre invariant of the weak Néron fiber with that of the
 * fixed locus.
 *
 * # Safety
 * `m` must be a live handle; out pointers null or valid for a write.
 */
enum TqStatus tq_model_serre(const struct TqModel *m, int64_t *lhs, int64_t *rhs, bool *pass);

/**
 * Rational volume congruence modulo `q` for a `q`-group model.
 *
 * # Safety
 * `m` must be a live handle; out pointers null or valid for a write.
 */
enum TqStatus tq_model_volume(const struct TqModel *m,
                              uint64_t q,
                              int64_t *s_xl,
                              int64_t *s_x,
                              bool *pass);

/**
 * Counts `F_q`-points of the special fiber by brute force and from its class.
 *
 * # Safety
 * `m` must be a live handle; out pointers null or valid for a write.
 */
enum TqStatus tq_model_count(const struct TqModel *m,
                             uint64_t q,
                             uint64_t *counted,
                             int64_t *predicted);

/**
 * Runs the command-line interface on `argc` arguments (excluding the program
 * name) and returns its exit code. The JSON output is stored in `*out` when
 * `out` is non-null; release it with [`tq_string_free`].
 *
 * # Safety
 * `argv` must hold `argc` C strings; `out` null or valid for a write.
 */
int tq_run_cli(int argc, const char *const *argv, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAMEQUOT_H */
