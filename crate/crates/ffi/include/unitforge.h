#ifndef UNITFORGE_H
#define UNITFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which side of the subgroup sum `g` sits on.
typedef enum UfSide {
  UF_SIDE_LEFT = 0,
  UF_SIDE_RIGHT = 1,
} UfSide;

// Status codes returned by every fallible call.
typedef enum UfStatus {
  UF_STATUS_OK = 0,
  UF_STATUS_NULL_POINTER = 1,
  UF_STATUS_INVALID_UTF8 = 2,
  UF_STATUS_GROUP_ERROR = 3,
  UF_STATUS_UNIT_ERROR = 4,
  UF_STATUS_HYPOTHESIS_VIOLATION = 5,
  UF_STATUS_FREENESS_ERROR = 6,
  UF_STATUS_PANIC = 7,
} UfStatus;

// Verdict of a freeness report.
typedef enum UfVerdict {
  UF_VERDICT_CERTIFIED_CONDITION = 0,
  UF_VERDICT_PASSED_TO_BOUND = 1,
  UF_VERDICT_VIOLATION = 2,
  UF_VERDICT_INCONCLUSIVE = 3,
} UfVerdict;

// A finite group.
typedef struct UfGroup UfGroup;

// Result of a freeness check.
typedef struct UfReport UfReport;

// A unit of the integral group ring.
typedef struct UfUnit UfUnit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the next call.
const char *uf_last_error_message(void);

// Library version as a static string.
const char *uf_version(void);

// Frees a string returned by this library.
void uf_string_free(char *s);

// Loads a built-in group by key, e.g. `"d8"` or `"heis27"`.
enum UfStatus uf_group_catalog(const char *key, struct UfGroup **out);

// Loads a group from its JSON description.
enum UfStatus uf_group_from_json(const char *json, struct UfGroup **out);

// Order of the group, 0 for a null handle.
size_t uf_group_order(const struct UfGroup *group);

// Index of the element with the given display name.
enum UfStatus uf_group_find(const struct UfGroup *group, const char *name, size_t *out_index);

// Order of a group element, 0 if the index is out of range.
size_t uf_group_element_order(const struct UfGroup *group, size_t x);

// Inverse of a group element, `SIZE_MAX` if the index is out of range.
size_t uf_group_inverse(const struct UfGroup *group, size_t x);

void uf_group_free(struct UfGroup *group);

// Bicyclic unit `1 + (1-h) g h~` (left) or `1 + h~ g (1-h)` (right).
enum UfStatus uf_unit_bicyclic(const struct UfGroup *group,
                               size_t g,
                               size_t h,
                               enum UfSide which,
                               struct UfUnit **out);

// Bovdi unit with exponent `k`.
enum UfStatus uf_unit_bovdi(const struct UfGroup *group,
                            uint64_t k,
                            size_t g,
                            size_t h,
                            enum UfSide which,
                            struct UfUnit **out);

// Bass cyclic unit `u_{k,m}(g)`.
enum UfStatus uf_unit_bass(const struct UfGroup *group,
                           size_t g,
                           uint64_t k,
                           uint64_t m,
                           struct UfUnit **out);

// Predicted multiplicative order: positive for finite, 0 for infinite, -1 if unknown.
int64_t uf_unit_predicted_order(const struct UfUnit *unit);

// Exact order check up to `bound`: positive order, 0 for confirmed infinite, -1 if the bound was reached.
int64_t uf_unit_verify_order(const struct UfUnit *unit,
                             uint64_t bound);

// JSON descriptor of the unit. Free with `uf_string_free`.
char *uf_unit_json(const struct UfUnit *unit);

void uf_unit_free(struct UfUnit *unit);

// Exhaustive search for a relation between two torsion units up to `max_syllables`.
enum UfStatus uf_free_product_oracle(const struct UfUnit *u,
                                     uint64_t ord_u,
                                     const struct UfUnit *v,
                                     uint64_t ord_v,
                                     size_t max_syllables,
                                     struct UfReport **out);

// Exhaustive search for a relation in the group generated by two units.
enum UfStatus uf_free_group_oracle(const struct UfUnit *a,
                                   const struct UfUnit *b,
                                   size_t max_length,
                                   struct UfReport **out);

// Exhaustive search for a collision of positive words up to `max_length`.
enum UfStatus uf_free_monoid_oracle(const struct UfUnit *a,
                                    const struct UfUnit *b,
                                    size_t max_length,
                                    struct UfReport **out);

// Verdict of a report. A null handle reads as inconclusive.
enum UfVerdict uf_report_verdict(const struct UfReport *report);

// Number of words examined by the search.
uint64_t uf_report_words_checked(const struct UfReport *report);

// JSON form of the report. Free with `uf_string_free`.
char *uf_report_json(const struct UfReport *report);

void uf_report_free(struct UfReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNITFORGE_H */
