/* apxgrp: covering-set construction and exact verification for iterated
 * sumsets in finitely generated abelian groups.
 *
 * All functions return APXGRP_OK on success.  On failure the return code
 * classifies the error and apxgrp_last_error() carries a message for the
 * calling thread.  Strings returned through out-parameters are heap
 * allocated and must be released with apxgrp_string_free().
 */
#ifndef APXGRP_H
#define APXGRP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum apxgrp_status {
  APXGRP_OK = 0,
  APXGRP_ERR_PARSE = 1,
  APXGRP_ERR_SPEC_MISMATCH = 2,
  APXGRP_ERR_DOMAIN = 3,
  APXGRP_ERR_THRESHOLD = 4,
  APXGRP_ERR_OVERFLOW = 5,
  APXGRP_ERR_RESOURCE = 6,
  APXGRP_ERR_MEMBERSHIP = 7,
  APXGRP_ERR_VALIDATION = 8,
  APXGRP_ERR_FALSIFIED = 9,
  APXGRP_ERR_IO = 10,
  APXGRP_ERR_INTERNAL = 11
} apxgrp_status;

/* Opaque canonical point set over a group (moduli, rank). */
typedef struct apxgrp_set apxgrp_set;

const char* apxgrp_version(void);
/* Thread-local message describing the most recent failure. */
const char* apxgrp_last_error(void);
void apxgrp_string_free(char* s);

/* Set documents: {"group": {"moduli": [d1,...], "rank": n},
 *                 "points": [[t1..tm, z1..zn], ...]} */
apxgrp_status apxgrp_set_parse(const char* json_text, apxgrp_set** out);
apxgrp_status apxgrp_set_read_file(const char* path, apxgrp_set** out);
void apxgrp_set_free(apxgrp_set* set);
apxgrp_status apxgrp_set_to_json(const apxgrp_set* set, char** json_out);
apxgrp_status apxgrp_set_card(const apxgrp_set* set, int64_t* card_out);

apxgrp_status apxgrp_sumset(const apxgrp_set* a, const apxgrp_set* b,
                            apxgrp_set** out);
apxgrp_status apxgrp_hfold(const apxgrp_set* set, int64_t h, apxgrp_set** out);
/* Full h-fold result as a JSON document with the input echoed. */
apxgrp_status apxgrp_hfold_document(const apxgrp_set* set, int64_t h,
                                    char** json_out);
/* |hA| for h = 1..h_max as a JSON document. */
apxgrp_status apxgrp_hfold_counts(const apxgrp_set* set, int64_t h_max,
                                  char** json_out);

/* method: "auto", "simplex", "main-zn" or "abelian".  The certificate is
 * written only when the exact containment check passes; a falsified
 * construction reports APXGRP_ERR_FALSIFIED with a witness document. */
apxgrp_status apxgrp_build_cover(const apxgrp_set* set, int64_t r, int64_t h,
                                 const char* method,
                                 char** certificate_json_out,
                                 char** witness_json_out);

/* Re-runs the exact containment of a certificate document.  APXGRP_OK means
 * verified; APXGRP_ERR_FALSIFIED carries the witness. */
apxgrp_status apxgrp_verify_certificate(const char* certificate_json,
                                        char** witness_json_out);

/* Direct containment check of an explicit cover. */
apxgrp_status apxgrp_verify_cover(const apxgrp_set* set, int64_t r, int64_t h,
                                  const apxgrp_set* cover,
                                  char** witness_json_out);

/* Exact minimum cover report; budget <= 0 uses the built-in default. */
apxgrp_status apxgrp_minimal_cover(const apxgrp_set* set, int64_t r, int64_t h,
                                   int64_t budget, char** report_json_out);

/* Per-h cover-size scan; csv_out may be NULL when no table is wanted. */
apxgrp_status apxgrp_scan_h0(const apxgrp_set* set, int64_t r, int64_t ell,
                             int64_t h_max, int exact, char** report_json_out,
                             char** csv_out);

/* Rewrite-constant report {points, z, m, c, policy} for a lattice set. */
apxgrp_status apxgrp_khovanskii(const apxgrp_set* set, char** report_json_out);

#ifdef __cplusplus
}
#endif

#endif /* APXGRP_H */
