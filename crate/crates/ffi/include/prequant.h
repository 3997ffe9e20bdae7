#ifndef PREQUANT_H
#define PREQUANT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum {
  PREQUANT_STATUS_OK = 0,
  // Malformed input: a group string, a non-UTF-8 string, a bad rational.
  PREQUANT_STATUS_PARSE_ERROR = 1,
  // Well-formed input outside the supported domain.
  PREQUANT_STATUS_DOMAIN_ERROR = 2,
  // An internal consistency check failed.
  PREQUANT_STATUS_INTERNAL_ERROR = 3,
  PREQUANT_STATUS_NULL_POINTER = 4,
  PREQUANT_STATUS_PANIC = 5,
} PrequantStatus;

typedef enum {
  PREQUANT_VERDICT_NO = 0,
  PREQUANT_VERDICT_YES = 1,
  PREQUANT_VERDICT_OPEN = 2,
} PrequantVerdict;

// Opaque handle to a parsed group.
typedef struct PrequantGroup PrequantGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse a group such as `PU:6`, `SU:8/4`, `PSp:3`, `SO:9`, `PO:14`, `Ss:8`,
// `PE6` or `PE7`. On success `*out` owns a new handle.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
PrequantStatus prequant_group_parse(const char *text, PrequantGroup **out);

// # Safety
// `g` must come from [`prequant_group_parse`] and not have been freed. Null is ignored.
void prequant_group_free(PrequantGroup *g);

// Display name of the group, e.g. `SU(8)/Z4`.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
PrequantStatus prequant_group_name(const PrequantGroup *g, char **out);

// Minimal pre-quantizable level.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
PrequantStatus prequant_l0(const PrequantGroup *g, uint64_t *out);

// Minimal level with its per-prime breakdown, as a JSON object.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
PrequantStatus prequant_l0_json(const PrequantGroup *g, char **out);

// Whether `level` admits a pre-quantization for surfaces of the given genus.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
PrequantStatus prequant_check_level(const PrequantGroup *g,
                                    uint64_t level,
                                    uint64_t genus,
                                    bool *out);

// Pullback of the degree-3 generator under the commutator map, mod `prime`.
// `*out` is set to null when no explicit class is available at this prime.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
PrequantStatus prequant_phi_star(const PrequantGroup *g, uint64_t prime, bool ascii, char **out);

// Run the Hopf axiom checks through `max_degree`.
//
// # Safety
// `g` must be a live handle; `checks` and `failures` valid pointers.
PrequantStatus prequant_verify_hopf(const PrequantGroup *g,
                                    uint64_t prime,
                                    uint32_t max_degree,
                                    uint64_t *checks,
                                    uint64_t *failures);

// Integrality of the conjugacy class of exp(ζ) at `level`. ζ is given by
// `n` numerators and `n` denominators and must lie in the fundamental alcove.
//
// # Safety
// `nums` and `dens` must point to `n` values each; `out` must be valid.
PrequantStatus prequant_conjclass_check(size_t n,
                                        const int64_t *nums,
                                        const int64_t *dens,
                                        uint64_t level,
                                        bool *out);

// Verdict for PU(n) with `count` marked classes, stored row by row
// (`count * n` numerators and denominators).
//
// # Safety
// `nums` and `dens` must point to `count * n` values each (or may be null when
// `count` is 0); `out` must be valid.
PrequantStatus prequant_marked_points(size_t n,
                                      uint64_t level,
                                      const int64_t *nums,
                                      const int64_t *dens,
                                      size_t count,
                                      PrequantVerdict *out);

// Message for the last failed call on this thread, or null. The pointer stays
// valid until the next library call on this thread.
const char *prequant_last_error_message(void);

// # Safety
// `s` must come from this library and not have been freed. Null is ignored.
void prequant_string_free(char *s);

// Library version as a static string.
const char *prequant_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREQUANT_H */
