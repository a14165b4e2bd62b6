/* C interface to the uniclone workbench: finite partition filters, clone
 * powers, limit reduced powers, and the verification suites behind the
 * uniclone CLI. All structured input and output is JSON text; strings
 * returned through out-parameters are heap allocated and released with
 * ucl_string_free. */

#ifndef UNICLONE_H
#define UNICLONE_H

#ifdef __cplusplus
extern "C" {
#endif

#ifndef UCL_API
#if defined(_WIN32)
#define UCL_API __declspec(dllexport)
#else
#define UCL_API __attribute__((visibility("default")))
#endif
#endif

typedef enum ucl_status {
  UCL_OK = 0,
  UCL_PROPERTY_VIOLATION = 1, /* a verified property failed; report says where */
  UCL_ERR_BAD_ARGUMENT = 2,
  UCL_ERR_PARSE = 3,
  UCL_ERR_CAP_EXCEEDED = 4,
  UCL_ERR_INTERNAL = 5
} ucl_status;

/* opaque algebra handle */
typedef struct ucl_algebra ucl_algebra;

UCL_API const char* ucl_version(void);

/* message for the most recent failing call on this thread */
UCL_API const char* ucl_last_error(void);

UCL_API void ucl_string_free(char* s);

/* Run a verification suite: "thm1", "thm2", "thm3", "free", "functor",
 * "los", "colimit". params_json supplies suite parameters (seed, sizes,
 * trial counts; "system" for colimit); NULL or "{}" selects the defaults.
 * *report_out receives the JSON report. */
UCL_API ucl_status ucl_verify(const char* suite, const char* params_json, char** report_out);

/* Los transfer for a limit reduced power descriptor and a corpus document
 * ({"sentences":[...]} or {"count":N,"depth":D,"seed":S}). */
UCL_API ucl_status ucl_los(const char* power_json, const char* corpus_json, char** report_out);

/* Open an algebra from a JSON descriptor (see README for the schema). */
UCL_API ucl_status ucl_algebra_open(const char* descriptor_json, ucl_algebra** out);
UCL_API void ucl_algebra_close(ucl_algebra* a);

/* {"base":...,"carrier":...,"provenance":"..."} */
UCL_API ucl_status ucl_algebra_info(const ucl_algebra* a, char** info_out);

/* Evaluate a sentence; *truth_out becomes 0 or 1. */
UCL_API ucl_status ucl_algebra_eval(const ucl_algebra* a, const char* formula, int* truth_out);

/* DOT export. what = "lattice": refinement lattice of Pi(index), params
 * {"index":N}; what = "ba": block algebra and filter lattice of the filter
 * in params ({"filter":{...}} or {"index":N} for the full filter). */
UCL_API ucl_status ucl_export_dot(const char* what, const char* params_json, char** dot_out);

#ifdef __cplusplus
}
#endif

#endif /* UNICLONE_H */
