/* C interface to the multfree toolkit. Generated by cbindgen; do not edit. */

#ifndef MULTFREE_H
#define MULTFREE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every fallible entry point.
 */
typedef enum MfStatus {
  MF_STATUS_OK = 0,
  MF_STATUS_PARSE_ERROR = 1,
  MF_STATUS_CAP_EXCEEDED = 2,
  MF_STATUS_INCONCLUSIVE = 3,
  MF_STATUS_THEOREM_VIOLATION = 4,
  MF_STATUS_CERTIFICATION_FAILED = 5,
  MF_STATUS_NULL_POINTER = 6,
  MF_STATUS_INTERNAL_ERROR = 7,
} MfStatus;

/**
 * Opaque finite-field handle.
 */
typedef struct MfField MfField;

/**
 * Opaque group handle.
 */
typedef struct MfGroup MfGroup;

/**
 * Hecke-algebra summary filled by `mf_hecke_info`.
 */
typedef struct MfHeckeInfo {
  uint64_t dim;
  bool commutative;
  uint64_t double_cosets;
} MfHeckeInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version string; static storage, do not free.
 */
const char *mf_version(void);

/**
 * Message for the most recent failure on this thread; valid until the
 * next failing call. Do not free.
 */
const char *mf_last_error_message(void);

/**
 * Frees a string previously returned through an out-parameter.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library.
 */
void mf_string_free(char *s);

/**
 * Builds a finite field from a spec string like "gf(3,2)".
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string; `out` must be non-null.
 */
enum MfStatus mf_field_new(const char *spec, struct MfField **out);

/**
 * Field size q = p^k, or 0 on a null handle.
 *
 * # Safety
 * `field` must be null or a pointer from `mf_field_new`.
 */
uint64_t mf_field_order(const struct MfField *field);

/**
 * # Safety
 * `field` must be null or a pointer from `mf_field_new`, freed once.
 */
void mf_field_free(struct MfField *field);

/**
 * Builds a group from a spec string like "sym(4)" or "gl(2,3,1)".
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string; `out` must be non-null.
 */
enum MfStatus mf_group_new(const char *spec, struct MfGroup **out);

/**
 * Group order, or 0 on a null handle.
 *
 * # Safety
 * `group` must be null or a pointer from `mf_group_new`.
 */
uint64_t mf_group_order(const struct MfGroup *group);

/**
 * # Safety
 * `group` must be null or a pointer from `mf_group_new`, freed once.
 */
void mf_group_free(struct MfGroup *group);

/**
 * Dimension and commutativity of the Hecke algebra of (G, H, eta).
 *
 * # Safety
 * All spec strings must be valid NUL-terminated strings; `out` non-null.
 */
enum MfStatus mf_hecke_info(const char *group_spec,
                            const char *subgroup_spec,
                            const char *character_spec,
                            const char *field_spec,
                            struct MfHeckeInfo *out);

/**
 * Runs one scenario (TOML text) and returns the machine report as JSON.
 *
 * # Safety
 * `toml_text` must be a valid NUL-terminated string; `out_json` non-null.
 */
enum MfStatus mf_run_scenario_toml(const char *toml_text, uint64_t seed, char **out_json);

/**
 * Runs a built-in suite and returns the machine report as JSON.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `out_json` non-null.
 */
enum MfStatus mf_run_suite(const char *name, uint64_t seed, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTFREE_H */
