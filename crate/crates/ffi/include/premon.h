#ifndef PREMON_H
#define PREMON_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PremonHeightKind {
  PREMON_HEIGHT_KIND_EXACT = 0,
  // `value` is a lower bound; the search was cut off.
  PREMON_HEIGHT_KIND_AT_LEAST = 1,
  // An infinite descending chain is certified; `value` is the checked depth.
  PREMON_HEIGHT_KIND_INFINITE = 2,
} PremonHeightKind;

typedef enum PremonStatus {
  PREMON_STATUS_OK = 0,
  PREMON_STATUS_NULL_POINTER = 1,
  PREMON_STATUS_INVALID_UTF8 = 2,
  // Malformed instance or element, or a question that does not apply
  // (for example a quark test on a unit).
  PREMON_STATUS_INVALID_INPUT = 3,
  PREMON_STATUS_INVALID_BUDGET = 4,
  // A Rust panic was caught at the boundary.
  PREMON_STATUS_PANIC = 5,
} PremonStatus;

typedef enum PremonTri {
  PREMON_TRI_FALSE = 0,
  PREMON_TRI_TRUE = 1,
  PREMON_TRI_UNKNOWN = 2,
} PremonTri;

// Opaque handle to a parsed instance.
typedef struct PremonInstance PremonInstance;

// Search limits; every field must be positive.
typedef struct PremonBudget {
  size_t chain_depth;
  size_t factor_cap;
  size_t node_cap;
  size_t exponent_cap;
  size_t rewrite_radius;
} PremonBudget;

typedef struct PremonHeight {
  enum PremonHeightKind kind;
  size_t value;
} PremonHeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The library version as a static NUL-terminated string.
const char *premon_version(void);

// The last error message on this thread, or null. Valid until the next
// failing call on the same thread.
const char *premon_last_error(void);

struct PremonBudget premon_budget_default(void);

// Parses an instance from JSON.
//
// # Safety
// `spec_json` must be a NUL-terminated string and `out` writable.
enum PremonStatus premon_instance_new(const char *spec_json, struct PremonInstance **out);

// # Safety
// `instance` must come from [`premon_instance_new`] and not be freed twice.
void premon_instance_free(struct PremonInstance *instance);

// Full classification of an element as a JSON object.
//
// # Safety
// Pointers must be valid; `budget` may be null.
enum PremonStatus premon_classify(const struct PremonInstance *instance,
                                  const char *element,
                                  const struct PremonBudget *budget,
                                  char **out_json);

// # Safety
// Pointers must be valid; `budget` may be null.
enum PremonStatus premon_is_quark(const struct PremonInstance *instance,
                                  const char *element,
                                  const struct PremonBudget *budget,
                                  enum PremonTri *out);

// Degree-`degree` irreducibility; `degree = 0` means unbounded.
//
// # Safety
// Pointers must be valid; `budget` may be null.
enum PremonStatus premon_is_irreducible(const struct PremonInstance *instance,
                                        const char *element,
                                        size_t degree,
                                        const struct PremonBudget *budget,
                                        enum PremonTri *out);

// # Safety
// Pointers must be valid; `budget` may be null.
enum PremonStatus premon_height(const struct PremonInstance *instance,
                                const char *element,
                                const struct PremonBudget *budget,
                                struct PremonHeight *out);

// A certified descending chain of `length` elements as JSON. `element` may
// be null to start from the family's own chain.
//
// # Safety
// Pointers must be valid; `element` and `budget` may be null.
enum PremonStatus premon_chain(const struct PremonInstance *instance,
                               const char *element,
                               size_t length,
                               const struct PremonBudget *budget,
                               char **out_json);

// Number of monoids of order `n` up to isomorphism (`1 ≤ n ≤ 4`).
//
// # Safety
// `out` must be writable.
enum PremonStatus premon_monoid_count(size_t n, size_t *out);

// # Safety
// `s` must come from this library and not be freed twice.
void premon_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREMON_H */
