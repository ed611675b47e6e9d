#ifndef MDMAT_H
#define MDMAT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>

// Result codes. The nonzero library codes match the CLI exit codes.
typedef enum MdStatus {
  MD_STATUS_OK = 0,
  MD_STATUS_VALIDATION = 1,
  MD_STATUS_PARSE = 2,
  MD_STATUS_BUDGET = 4,
  MD_STATUS_NULL_ARGUMENT = 16,
  MD_STATUS_INVALID_UTF8 = 17,
  MD_STATUS_PANIC = 18,
} MdStatus;

// Latin hypercube with symbols `1..=n`.
typedef struct MdLatin MdLatin;

// Exact rational tensor.
typedef struct MdTensor MdTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL.
// The pointer stays valid until the next failing call on the same thread.
const char *md_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void md_string_free(char *s);

// # Safety
// `t` must be NULL or a live handle from this library.
void md_tensor_free(struct MdTensor *t);

// Parses `pmat v1` text.
//
// # Safety
// `src` must be a NUL-terminated string; `out` must be writable.
enum MdStatus md_tensor_parse(const char *src, struct MdTensor **out);

// Canonical `pmat v1` text; free with [`md_string_free`].
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum MdStatus md_tensor_serialize(const struct MdTensor *t, char **out);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum MdStatus md_tensor_dim(const struct MdTensor *t, size_t *out);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum MdStatus md_tensor_extent(const struct MdTensor *t, size_t axis, size_t *out);

// Entry at a 0-based multi-index, as a rational literal.
//
// # Safety
// `index` must point to `len` values; `out` must be writable.
enum MdStatus md_tensor_entry(const struct MdTensor *t,
                              const size_t *index,
                              size_t len,
                              char **out);

// The cube of dimension `d` and order `n` with every entry `1/n`.
//
// # Safety
// `out` must be writable.
enum MdStatus md_tensor_uniform(size_t d, size_t n, struct MdTensor **out);

// The unit diagonal cube of dimension `d` and order `n`.
//
// # Safety
// `out` must be writable.
enum MdStatus md_tensor_identity(size_t d, size_t n, struct MdTensor **out);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum MdStatus md_tensor_outer(const struct MdTensor *a,
                              const struct MdTensor *b,
                              struct MdTensor **out);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum MdStatus md_tensor_kronecker(const struct MdTensor *a,
                                  const struct MdTensor *b,
                                  struct MdTensor **out);

// Contracts the last axis of `a` with the first axis of `b`.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum MdStatus md_tensor_dot(const struct MdTensor *a,
                            const struct MdTensor *b,
                            struct MdTensor **out);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum MdStatus md_tensor_circle(const struct MdTensor *a,
                               const struct MdTensor *b,
                               struct MdTensor **out);

// Sums over the diagonal of the given axes, which must share one extent.
//
// # Safety
// `axes` must point to `len` values; `out` must be writable.
enum MdStatus md_tensor_contract(const struct MdTensor *a,
                                 const size_t *axes,
                                 size_t len,
                                 struct MdTensor **out);

// Sums out the given axes.
//
// # Safety
// `axes` must point to `len` values; `out` must be writable.
enum MdStatus md_tensor_project(const struct MdTensor *a,
                                const size_t *axes,
                                size_t len,
                                struct MdTensor **out);

// Exact permanent as a rational literal.
//
// # Safety
// `a` must be a live handle; `out` must be writable.
enum MdStatus md_tensor_permanent(const struct MdTensor *a, char **out);

// # Safety
// `a` must be a live handle; `out` must be writable.
enum MdStatus md_tensor_is_k_stochastic(const struct MdTensor *a, size_t k, bool *out);

// # Safety
// `a` must be a live handle; `out` must be writable.
enum MdStatus md_tensor_has_positive_diagonal(const struct MdTensor *a, bool *out);

// # Safety
// `q` must be NULL or a live handle from this library.
void md_latin_free(struct MdLatin *q);

// Parses `latin v1` text.
//
// # Safety
// `src` must be a NUL-terminated string; `out` must be writable.
enum MdStatus md_latin_parse(const char *src, struct MdLatin **out);

// # Safety
// `q` must be a live handle; `out` must be writable.
enum MdStatus md_latin_serialize(const struct MdLatin *q, char **out);

// The (0,1) permutation tensor of `q`.
//
// # Safety
// `q` must be a live handle; `out` must be writable.
enum MdStatus md_latin_to_tensor(const struct MdLatin *q, struct MdTensor **out);

// Number of transversals, in decimal.
//
// # Safety
// `q` must be a live handle; `out` must be writable.
enum MdStatus md_latin_transversals(const struct MdLatin *q, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MDMAT_H */
