#ifndef KHAT_KHAT_H
#define KHAT_KHAT_H

/* C interface to the khat library.  All objects are opaque handles owned by
 * the caller and released with the matching *_free function.  Strings
 * returned through char** are released with khat_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(KHAT_BUILDING_LIBRARY)
#define KHAT_API __attribute__((visibility("default")))
#else
#define KHAT_API
#endif

typedef enum khat_status {
  KHAT_OK = 0,
  KHAT_ERR_ARGUMENT = 1,    /* null pointer or bad option */
  KHAT_ERR_PARSE = 2,       /* lexical, syntax or semantic error; see khat_error */
  KHAT_ERR_DOMAIN = 3,      /* mathematically invalid input */
  KHAT_ERR_UNSUPPORTED = 4, /* outside what the library can construct */
  KHAT_ERR_INTERNAL = 5
} khat_status;

typedef enum khat_error_category {
  KHAT_ERROR_NONE = 0,
  KHAT_ERROR_LEXICAL = 1,
  KHAT_ERROR_SYNTAX = 2,
  KHAT_ERROR_SEMANTIC = 3
} khat_error_category;

typedef struct khat_error {
  khat_error_category category;
  int line;
  int column;
  char message[512];
} khat_error;

typedef enum khat_format { KHAT_FORMAT_TEXT = 0, KHAT_FORMAT_JSON = 1 } khat_format;

typedef enum khat_verdict { KHAT_PASS = 0, KHAT_FAIL = 1, KHAT_UNKNOWN = 2 } khat_verdict;

typedef struct khat_run_options {
  uint64_t seed;
  double tol;
  int bound_coords;
  int bound_rank;
  int bound_degree;
} khat_run_options;

typedef struct khat_scenario khat_scenario;
typedef struct khat_report khat_report;
typedef struct khat_space khat_space;
typedef struct khat_form khat_form;
typedef struct khat_connection khat_connection;

KHAT_API const char* khat_status_string(khat_status s);
/* Message of the most recent failing call on this thread ("" if none). */
KHAT_API const char* khat_last_error(void);
KHAT_API void khat_string_free(char* s);
KHAT_API void khat_run_options_default(khat_run_options* o);

/* scenarios and reports */
KHAT_API khat_status khat_scenario_parse(const char* text, khat_scenario** out, khat_error* err);
KHAT_API void khat_scenario_free(khat_scenario* s);
KHAT_API khat_status khat_scenario_render(const khat_scenario* s, char** out);
KHAT_API int khat_scenario_task_count(const khat_scenario* s);
KHAT_API khat_status khat_scenario_run(const khat_scenario* s, const khat_run_options* o, khat_report** out);
KHAT_API khat_status khat_suite_run(const khat_run_options* o, khat_report** out);
KHAT_API khat_status khat_report_render(const khat_report* r, khat_format f, char** out);
KHAT_API int khat_report_count(const khat_report* r, khat_verdict v);
KHAT_API void khat_report_free(khat_report* r);

/* base spaces R^a x T^b */
KHAT_API khat_status khat_space_new(int chart_dim, int torus_dim, khat_space** out);
KHAT_API void khat_space_free(khat_space* s);

/* forms, written in the scenario expression syntax */
KHAT_API khat_status khat_form_parse(const khat_space* s, const char* expr, khat_form** out, khat_error* err);
KHAT_API void khat_form_free(khat_form* f);
KHAT_API khat_status khat_form_print(const khat_form* f, char** out);
KHAT_API khat_status khat_form_add(const khat_form* a, const khat_form* b, khat_form** out);
KHAT_API khat_status khat_form_wedge(const khat_form* a, const khat_form* b, khat_form** out);
KHAT_API khat_status khat_form_d(const khat_form* f, khat_form** out);
KHAT_API khat_status khat_form_normal(const khat_form* f, khat_form** out);
KHAT_API khat_status khat_form_is_closed(const khat_form* f, int* out);
KHAT_API khat_status khat_form_is_exact(const khat_form* f, int* out);
KHAT_API khat_status khat_form_equal(const khat_form* a, const khat_form* b, int* out);

/* connections */
KHAT_API khat_status khat_connection_parse(const khat_space* s, const char* expr, khat_connection** out,
                                           khat_error* err);
KHAT_API void khat_connection_free(khat_connection* c);
KHAT_API int khat_connection_rank(const khat_connection* c);
KHAT_API khat_status khat_connection_print(const khat_connection* c, char** out);
KHAT_API khat_status khat_connection_ch(const khat_connection* c, khat_form** out);
KHAT_API khat_status khat_connection_cs(const khat_connection* from, const khat_connection* to, khat_form** out);
KHAT_API khat_status khat_connection_equivalent(const khat_connection* a, const khat_connection* b, int* out);
KHAT_API khat_status khat_connection_holonomy(const khat_connection* c, double tol, int* trivial, double* defect);
/* A direct sum of line bundles whose CS class against flat is that of rho. */
KHAT_API khat_status khat_realize(const khat_form* rho, khat_connection** out);

#ifdef __cplusplus
}
#endif

#endif
