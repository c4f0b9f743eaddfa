/* hopfforge -- exact verification engine for Hopf doubles, Yetter-Drinfeld
 * module algebras and the associated Hopf algebroids at q a 2p-th root of
 * unity.  C interface: opaque engine handles, status codes, string results.
 *
 * Every returned char* is heap-allocated and must be released with
 * hf_string_free.  Engines are not thread-safe; use one per thread.
 */
#ifndef HOPFFORGE_H
#define HOPFFORGE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hf_engine hf_engine;

typedef enum hf_status {
  HF_OK = 0,
  HF_ERR_INVALID_ARGUMENT = 1,
  HF_ERR_UNSUPPORTED_P = 2,
  HF_ERR_UNKNOWN_NAME = 3,
  HF_ERR_PARSE = 4,
  HF_ERR_EVAL = 5,
  HF_ERR_INTERNAL = 6
} hf_status;

const char* hf_version(void);
const char* hf_status_name(hf_status s);

/* p in {2, 3, 5}; larger bundles (Drinfeld/Heisenberg doubles) need p <= 3 */
hf_status hf_engine_new(unsigned p, hf_engine** out);
void hf_engine_free(hf_engine* e);
/* message for the most recent failing call on this engine */
const char* hf_engine_last_error(const hf_engine* e);

/* ---- verification suites ---- */

/* JSON array of suite names */
hf_status hf_suite_list(hf_engine* e, char** out_json);
hf_status hf_suite_supported(hf_engine* e, const char* suite, int* out_supported);
/* Runs one suite with the given RNG seed.  The report is JSON, or plain text
 * when as_text is nonzero; *out_all_pass becomes 1 when every check passed. */
hf_status hf_run_suite(hf_engine* e, const char* suite, uint64_t seed, int as_text,
                       char** out_report, int* out_all_pass);

/* ---- element expressions ---- */

/* JSON array of algebra names addressable in expressions */
hf_status hf_algebra_list(hf_engine* e, char** out_json);
/* Evaluates an element expression in the named algebra.  JSON output carries
 * the canonical coefficient vector; text output is the pretty-printed form. */
hf_status hf_eval(hf_engine* e, const char* algebra, const char* expression, int as_text,
                  char** out);

/* ---- bundle exports ---- */

/* bundle in {taft, taftdual, double, heisenberg, uq, hbar, matp},
 * format in {json, text}; output is byte-stable across runs */
hf_status hf_export(hf_engine* e, const char* bundle, const char* format, char** out);

void hf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* HOPFFORGE_H */
