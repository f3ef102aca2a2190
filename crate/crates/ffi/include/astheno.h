#ifndef ASTHENO_H
#define ASTHENO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stdint.h>

typedef enum AsthenoStatus {
  ASTHENO_STATUS_OK = 0,
  ASTHENO_STATUS_NULL_ARGUMENT = 1,
  ASTHENO_STATUS_INVALID_UTF8 = 2,
  ASTHENO_STATUS_PARSE_ERROR = 3,
  ASTHENO_STATUS_RECORD_ERROR = 4,
  ASTHENO_STATUS_INVALID_GEOMETRY = 5,
  ASTHENO_STATUS_INVALID_ARGUMENT = 6,
  ASTHENO_STATUS_CALCULUS_ERROR = 7,
  ASTHENO_STATUS_PANIC = 8,
} AsthenoStatus;

typedef enum AsthenoVerdict {
  ASTHENO_VERDICT_IDENTICALLY_ZERO = 0,
  ASTHENO_VERDICT_NONZERO = 1,
  ASTHENO_VERDICT_CONDITIONALLY_ZERO = 2,
} AsthenoVerdict;

typedef enum AsthenoConvention {
  ASTHENO_CONVENTION_GRADED = 0,
  ASTHENO_CONVENTION_UNGRADED = 1,
} AsthenoConvention;

typedef enum AsthenoCondition {
  ASTHENO_CONDITION_ASTHENO = 0,
  ASTHENO_CONDITION_SKT = 1,
  ASTHENO_CONDITION_GAUDUCHON = 2,
} AsthenoCondition;

typedef enum AsthenoFactor {
  ASTHENO_FACTOR_ALPHA_SASAKIAN = 0,
  ASTHENO_FACTOR_BETA_KENMOTSU = 1,
  ASTHENO_FACTOR_COSYMPLECTIC = 2,
  ASTHENO_FACTOR_TRANS_SASAKIAN = 3,
} AsthenoFactor;

/**
 * Opaque form handle.
 */
typedef struct AsthenoForm AsthenoForm;

/**
 * Factor half-dimensions and normalization switches.
 */
typedef struct AsthenoGeometry {
  uint32_t m1;
  uint32_t m2;
  bool truncate;
  bool reduce_ring;
} AsthenoGeometry;

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *astheno_last_error(void);

/**
 * Library version as a static string.
 */
const char *astheno_version(void);

/**
 * Parses `text` in the plain-text grammar.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum AsthenoStatus astheno_form_parse(const char *text, struct AsthenoForm **out);

/**
 * Reads a form from its JSON record.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum AsthenoStatus astheno_form_from_record(const char *json, struct AsthenoForm **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `form` must come from this library and not be freed twice.
 */
void astheno_form_free(struct AsthenoForm *form);

/**
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum AsthenoStatus astheno_form_clone(const struct AsthenoForm *form, struct AsthenoForm **out);

/**
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum AsthenoStatus astheno_form_to_text(const struct AsthenoForm *form, char **out);

/**
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum AsthenoStatus astheno_form_to_latex(const struct AsthenoForm *form, char **out);

/**
 * Compact JSON record of the form.
 *
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum AsthenoStatus astheno_form_to_record(const struct AsthenoForm *form, char **out);

/**
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum AsthenoStatus astheno_form_is_zero(const struct AsthenoForm *form, bool *out);

/**
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum AsthenoStatus astheno_form_equal(const struct AsthenoForm *lhs,
                                      const struct AsthenoForm *rhs,
                                      bool *out);

/**
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum AsthenoStatus astheno_form_add(const struct AsthenoForm *lhs,
                                    const struct AsthenoForm *rhs,
                                    struct AsthenoForm **out);

/**
 * # Safety
 * Both handles and `geometry` must be valid; `out` must be writable.
 */
enum AsthenoStatus astheno_form_wedge(const struct AsthenoForm *lhs,
                                      const struct AsthenoForm *rhs,
                                      const struct AsthenoGeometry *geometry,
                                      struct AsthenoForm **out);

/**
 * Exterior derivative; `conv` is an `AsthenoConvention` code.
 *
 * # Safety
 * `form` and `geometry` must be valid; `out` must be writable.
 */
enum AsthenoStatus astheno_form_d(const struct AsthenoForm *form,
                                  uint32_t conv,
                                  const struct AsthenoGeometry *geometry,
                                  struct AsthenoForm **out);

/**
 * J applied after d; `conv` is an `AsthenoConvention` code.
 *
 * # Safety
 * `form` and `geometry` must be valid; `out` must be writable.
 */
enum AsthenoStatus astheno_form_dc(const struct AsthenoForm *form,
                                   uint32_t conv,
                                   const struct AsthenoGeometry *geometry,
                                   struct AsthenoForm **out);

/**
 * # Safety
 * `form` must be a live handle; `out` must be writable.
 */
enum AsthenoStatus astheno_form_j(const struct AsthenoForm *form, struct AsthenoForm **out);

/**
 * Classifies a condition for a pair of structure types with symbolic
 * coefficients. `cond`, `factor1`, `factor2` and `conv` are
 * `AsthenoCondition`, `AsthenoFactor` and `AsthenoConvention` codes.
 * `residual_out` may be null.
 *
 * # Safety
 * `geometry` must be valid and `verdict_out` writable.
 */
enum AsthenoStatus astheno_classify(uint32_t cond,
                                    const struct AsthenoGeometry *geometry,
                                    uint32_t factor1,
                                    uint32_t factor2,
                                    uint32_t conv,
                                    enum AsthenoVerdict *verdict_out,
                                    struct AsthenoForm **residual_out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void astheno_string_free(char *s);

#endif  /* ASTHENO_H */
