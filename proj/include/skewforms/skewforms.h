/* C interface to the skewforms library.
 *
 * Every object is an opaque handle released with its matching *_free
 * function. Functions return an sf_status; on failure the message, and for
 * parse errors the position, are available from sf_last_error* on the same
 * thread until the next failing call. Strings returned through out
 * parameters are owned by the caller and released with sf_string_free.
 */
#ifndef SKEWFORMS_H
#define SKEWFORMS_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SKEWFORMS_BUILDING_LIBRARY)
#    define SF_API __declspec(dllexport)
#  else
#    define SF_API __declspec(dllimport)
#  endif
#else
#  define SF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_PARSE = 1,
  SF_ERR_INVALID_ARGUMENT = 2,
  SF_ERR_NOT_FOUND = 3,
  SF_ERR_DOMAIN = 4,
  SF_ERR_IO = 5,
  SF_ERR_INTERNAL = 6
} sf_status;

typedef enum sf_format { SF_FORMAT_TEXT = 0, SF_FORMAT_JSONL = 1 } sf_format;

typedef struct sf_document sf_document;
typedef struct sf_form sf_form;
typedef struct sf_report sf_report;

SF_API const char* sf_version(void);

SF_API const char* sf_last_error(void);
/* 1-based position of the last parse error, 0 when not applicable. */
SF_API int sf_last_error_line(void);
SF_API int sf_last_error_column(void);

SF_API void sf_string_free(char* s);

SF_API sf_status sf_document_parse(const char* text, size_t length, sf_document** out);
SF_API sf_status sf_document_load(const char* path, sf_document** out);
SF_API void sf_document_free(sf_document* doc);
/* Canonical text of the document. */
SF_API sf_status sf_document_print(const sf_document* doc, char** out);
SF_API size_t sf_document_size(const sf_document* doc);
/* Name of the index-th declaration; the pointer lives as long as doc. */
SF_API const char* sf_document_name(const sf_document* doc, size_t index);

/* A form or scalar declaration as a form. */
SF_API sf_status sf_document_get_form(const sf_document* doc, const char* name, sf_form** out);
SF_API void sf_form_free(sf_form* form);
SF_API int sf_form_degree(const sf_form* form);
SF_API sf_status sf_form_to_string(const sf_form* form, char** out);
SF_API sf_status sf_form_exterior_derivative(const sf_form* form, sf_form** out);
SF_API sf_status sf_form_wedge(const sf_form* a, const sf_form* b, sf_form** out);
/* Hodge star under the document's metric (Euclidean when none is set). */
SF_API sf_status sf_form_hodge_star(const sf_document* doc, const sf_form* form, sf_form** out);

typedef struct sf_run_options {
  sf_format format;
  /* Declarations to analyze; NULL or zero count selects all applicable. */
  const char* const* names;
  size_t name_count;
  /* Scan box as (lo, hi) pairs, box_dims of them; zero dims uses [-1,1]^n. */
  const double* box;
  size_t box_dims;
  int grid;
  double h;
  int steps;
  double tol;
  int has_start;
  double start[2];
  double rect[4]; /* x0, x1, y0, y1 */
  int stride;
  int table_p;
  int table_n;
} sf_run_options;

/* Fills the defaults: text, grid 101, h 1e-3, 10000 steps, tol 1e-6,
 * unit square, stride 1000. */
SF_API void sf_run_options_init(sf_run_options* options);

/* doc may be NULL for the "table" command. */
SF_API sf_status sf_run(const sf_document* doc, const char* command, const sf_run_options* options,
                        sf_report** out);
SF_API const char* sf_report_text(const sf_report* report);
/* Nonzero when some verdict came out unknown. */
SF_API int sf_report_has_unknown(const sf_report* report);
SF_API void sf_report_free(sf_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SKEWFORMS_H */
