/* momcert shared-library C API.
 *
 * All data crosses this boundary as JSON text (schemas in README.md) or as
 * opaque handles. Every function returns a momcert_status; on MOMCERT_ERROR
 * the thread-local message from momcert_last_error() describes the failure.
 * MOMCERT_VIOLATION means the toolkit certified a mathematical violation
 * (failed positivity, infeasible truncation, failed verification); the
 * report output is still produced in that case.
 *
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with momcert_string_free; handles with the matching
 * *_free function. Handles are immutable and safe to share across threads.
 */

#ifndef MOMCERT_H
#define MOMCERT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum momcert_status {
  MOMCERT_OK = 0,
  MOMCERT_ERROR = 1,     /* operational failure (parse error, missing member, ...) */
  MOMCERT_VIOLATION = 2, /* mathematically certified violation */
} momcert_status;

typedef struct momcert_measure momcert_measure;
typedef struct momcert_sequence momcert_sequence;
typedef struct momcert_family momcert_family;

const char* momcert_version(void);

/* Thread-local message describing the most recent failure on this thread. */
const char* momcert_last_error(void);

void momcert_string_free(char* text);

/* --- handle construction and serialization --------------------------------- */

momcert_status momcert_measure_from_json(const char* json_text, momcert_measure** out);
momcert_status momcert_measure_to_json(const momcert_measure* measure, char** out);
void momcert_measure_free(momcert_measure* measure);

momcert_status momcert_sequence_from_json(const char* json_text, momcert_sequence** out);
momcert_status momcert_sequence_to_json(const momcert_sequence* sequence, char** out);
void momcert_sequence_free(momcert_sequence* sequence);

momcert_status momcert_family_from_json(const char* json_text, momcert_family** out);
momcert_status momcert_family_to_json(const momcert_family* family, char** out);
void momcert_family_free(momcert_family* family);

/* --- operations ------------------------------------------------------------ */

/* Moments of an atomic measure up to max_degree. */
momcert_status momcert_moments(const momcert_measure* measure, unsigned max_degree,
                               momcert_sequence** out);

/* Localized sequence for a coefficient vector (JSON array of terms). */
momcert_status momcert_localize(const momcert_sequence* sequence, const char* xi_json,
                                momcert_sequence** out);

/* Positive-definiteness test at the given order. MOMCERT_VIOLATION on a fail
 * verdict; the report is produced either way. */
momcert_status momcert_check_psd(const momcert_sequence* sequence, unsigned order,
                                 double tol, char** report_json);

/* Certificate family for a measure: members for the audit closure of the
 * xi set (JSON array of coefficient-vector arrays). */
momcert_status momcert_certify_generate(const momcert_measure* measure,
                                        const char* xi_set_json, momcert_family** out);

/* Verify a family against a sequence: moment conditions over all members,
 * parallelogram positivity over every derivable pair, and, when basis_json
 * is non-NULL, the sesquilinear audit over that basis (single-atom regions
 * from the member supports). MOMCERT_VIOLATION when any check fails. */
momcert_status momcert_certify_verify(const momcert_family* family,
                                      const momcert_sequence* sequence,
                                      const char* basis_json, double tol,
                                      char** report_json);

/* Per-xi order-2 solve of the localized truncations; family_out (optional)
 * receives the solved family. MOMCERT_VIOLATION when some xi is infeasible
 * (a certificate that the sequence is not a moment sequence). */
momcert_status momcert_certify_solve(const momcert_sequence* sequence,
                                     const char* xi_set_json, double tol,
                                     char** report_json, momcert_family** family_out);

/* Semispectral measure over the basis, Naimark dilation, moment
 * reconstruction. sequence may be NULL: the comparison sequence is then read
 * off the family totals (basis must be monomial unit vectors including the
 * constant). MOMCERT_VIOLATION on PSD defects or reconstruction failures. */
momcert_status momcert_dilate(const momcert_family* family, const char* basis_json,
                              const momcert_sequence* sequence, double tol,
                              char** report_json);

/* Run the bundled weak-limit suites; MOMCERT_VIOLATION if any suite deviates
 * from its documented verdicts or raises a falsification flag. */
momcert_status momcert_weak_limit_demo(double tol, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* MOMCERT_H */
