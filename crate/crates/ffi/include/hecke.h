#ifndef HECKE_H
#define HECKE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HeckeStatus {
  HECKE_STATUS_OK = 0,
  HECKE_STATUS_INVALID_ARGUMENT = 1,
  HECKE_STATUS_NULL_POINTER = 2,
  /**
   * A value does not fit the requested fixed-width type.
   */
  HECKE_STATUS_OVERFLOW = 3,
  HECKE_STATUS_INTERNAL = 4,
} HeckeStatus;

/**
 * Arithmetic context for one q.
 */
typedef struct HeckeContext HeckeContext;

/**
 * Result of an enumeration.
 */
typedef struct HeckeCycleList HeckeCycleList;

typedef struct HeckeCycle {
  int64_t age;
  size_t generation;
  uint32_t orbit;
  double re;
  double im;
} HeckeCycle;

/**
 * Message for the last failure on this thread; valid until the next call that fails.
 */
const char *hecke_last_error(void);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum HeckeStatus hecke_context_new(uint32_t q, struct HeckeContext **out);

/**
 * # Safety
 * `ctx` must come from `hecke_context_new` and not be used afterwards.
 */
void hecke_context_free(struct HeckeContext *ctx);

/**
 * Degree of λ over Q: the length of every coefficient array for this context.
 *
 * # Safety
 * `ctx` must be a live context.
 */
size_t hecke_context_degree(const struct HeckeContext *ctx);

/**
 * The minimal polynomial of λ as text, e.g. "t^2-t-1". Free with `hecke_string_free`.
 *
 * # Safety
 * `ctx` must be a live context and `out` a valid pointer.
 */
enum HeckeStatus hecke_minpoly(const struct HeckeContext *ctx, char **out);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void hecke_string_free(char *s);

/**
 * Whether a + cη is an odd vanishing cycle; `a` and `c` hold `degree` coefficients
 * in the basis 1, λ, λ², ….
 *
 * # Safety
 * `ctx` must be live, `a` and `c` must point to `degree` values, `out` must be valid.
 */
enum HeckeStatus hecke_is_member(const struct HeckeContext *ctx,
                                 const int64_t *a,
                                 const int64_t *c,
                                 bool *out);

/**
 * Whether the matrix (m₁₁ m₁₂; m₂₁ m₂₂) lies in the Hecke group; `entries`
 * holds the four entries row by row, each as `degree` coefficients.
 *
 * # Safety
 * `ctx` must be live, `entries` must point to 4·degree values, `out` must be valid.
 */
enum HeckeStatus hecke_in_hecke_group(const struct HeckeContext *ctx,
                                      const int64_t *entries,
                                      bool *out);

/**
 * All odd vanishing cycles with |x|² ≤ num/den, in canonical order.
 *
 * # Safety
 * `ctx` must be live and `out` valid.
 */
enum HeckeStatus hecke_enumerate_disk(const struct HeckeContext *ctx,
                                      int64_t num,
                                      int64_t den,
                                      struct HeckeCycleList **out);

/**
 * All odd vanishing cycles of age at most `age`, in canonical order.
 *
 * # Safety
 * `ctx` must be live and `out` valid.
 */
enum HeckeStatus hecke_enumerate_age(const struct HeckeContext *ctx,
                                     uint32_t age,
                                     struct HeckeCycleList **out);

/**
 * # Safety
 * `list` must be live or null.
 */
size_t hecke_cycle_list_len(const struct HeckeCycleList *list);

/**
 * # Safety
 * `list` must be live and `out` valid.
 */
enum HeckeStatus hecke_cycle_list_get(const struct HeckeCycleList *list,
                                      size_t index,
                                      struct HeckeCycle *out);

/**
 * Writes the `degree` coefficients of a and c for the point a + cη at `index`.
 *
 * # Safety
 * `list` must be live; `a_out` and `c_out` must have room for `degree` values.
 */
enum HeckeStatus hecke_cycle_list_coeffs(const struct HeckeCycleList *list,
                                         size_t index,
                                         int64_t *a_out,
                                         int64_t *c_out);

/**
 * q of the context that produced the list.
 *
 * # Safety
 * `list` must be live or null.
 */
uint32_t hecke_cycle_list_q(const struct HeckeCycleList *list);

/**
 * # Safety
 * `list` must come from an enumeration call and not be used afterwards.
 */
void hecke_cycle_list_free(struct HeckeCycleList *list);

/**
 * For q = 5: γ = a + cη (two coefficients each) as u·δ, written as JSON with
 * fields "u", "delta" and "trace". Free the string with `hecke_string_free`.
 *
 * # Safety
 * `a` and `c` must point to two values each, `out` must be valid.
 */
enum HeckeStatus hecke_decompose_q5_json(const int64_t *a, const int64_t *c, char **out);

#endif  /* HECKE_H */
