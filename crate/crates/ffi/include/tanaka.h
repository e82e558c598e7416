#ifndef TANAKA_H
#define TANAKA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TanakaStatus {
  TanakaStatus_Ok = 0,
  TanakaStatus_DomainFailure = 1,
  TanakaStatus_ParseError = 2,
  TanakaStatus_InternalError = 3,
  TanakaStatus_NullArgument = 4,
  TanakaStatus_InvalidUtf8 = 5,
} TanakaStatus;

/**
 * Opaque quadric model.
 */
typedef struct TanakaModel TanakaModel;

/**
 * Opaque prolongation result.
 */
typedef struct TanakaProlongation TanakaProlongation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses Model JSON into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TanakaStatus tanaka_model_from_json(const char *json, struct TanakaModel **out);

/**
 * Catalog model by name; `param <= 0` selects the family default and `extra`
 * appends sphere directions.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TanakaStatus tanaka_model_from_catalog(const char *name,
                                            int64_t param,
                                            uintptr_t extra,
                                            struct TanakaModel **out);

/**
 * # Safety
 * `model` must come from this library and not be freed twice.
 */
void tanaka_model_free(struct TanakaModel *model);

/**
 * Validation report as JSON; `passed` receives the overall outcome.
 *
 * # Safety
 * All pointers must be valid; `report_json` may be null to skip the report.
 */
enum TanakaStatus tanaka_model_validate(const struct TanakaModel *model,
                                        bool *passed,
                                        char **report_json);

/**
 * Full prolongation up to `max_degree`.
 *
 * # Safety
 * `model` and `out` must be valid pointers.
 */
enum TanakaStatus tanaka_prolong(const struct TanakaModel *model,
                                 uintptr_t max_degree,
                                 struct TanakaProlongation **out);

/**
 * # Safety
 * `p` must come from this library and not be freed twice.
 */
void tanaka_prolongation_free(struct TanakaProlongation *p);

/**
 * Top degree, or −1 for a null handle.
 *
 * # Safety
 * `p` must be null or a valid handle.
 */
int32_t tanaka_prolongation_top_degree(const struct TanakaProlongation *p);

/**
 * Jet determination order, or −1 for a null handle.
 *
 * # Safety
 * `p` must be null or a valid handle.
 */
int32_t tanaka_prolongation_jet_order(const struct TanakaProlongation *p);

/**
 * Dimension of the given degree (0 outside the computed range), or −1 for a
 * null handle.
 *
 * # Safety
 * `p` must be null or a valid handle.
 */
int64_t tanaka_prolongation_dim(const struct TanakaProlongation *p, int32_t degree);

/**
 * Prolongation result JSON (dimensions, structure constants, grading element).
 *
 * # Safety
 * `p` and `out` must be valid pointers.
 */
enum TanakaStatus tanaka_prolongation_to_json(const struct TanakaProlongation *p, char **out);

/**
 * JSON array of Field JSON objects realizing each basis element of `degree`.
 *
 * # Safety
 * `p` and `out` must be valid pointers.
 */
enum TanakaStatus tanaka_realize_json(const struct TanakaProlongation *p,
                                      int32_t degree,
                                      char **out);

/**
 * Tangency check of a Field JSON against the model. `verdict` receives the
 * outcome; `cert_json` (optional) the certificate.
 *
 * # Safety
 * `model`, `field_json` and `verdict` must be valid; `cert_json` may be null.
 */
enum TanakaStatus tanaka_verify_field(const struct TanakaModel *model,
                                      const char *field_json,
                                      bool *verdict,
                                      char **cert_json);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void tanaka_string_free(char *s);

/**
 * Message of the last failure on this thread (empty after a success). The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *tanaka_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TANAKA_H */
