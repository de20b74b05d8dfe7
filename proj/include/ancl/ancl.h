/* SPDX-License-Identifier: Apache-2.0 */
#ifndef ANCL_ANCL_H
#define ANCL_ANCL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ANCL_API __declspec(dllexport)
#else
#define ANCL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the nonzero values double as CLI exit codes. */
typedef enum {
    ANCL_OK = 0,
    ANCL_ERR_PARSE = 2,      /* malformed input, failed certification, unknown name */
    ANCL_ERR_CONTRACT = 3,   /* precondition violated, unsupported construction */
    ANCL_ERR_NOT_MEMBER = 4, /* operation needs membership in the AN-closure */
    ANCL_ERR_INTERNAL = 5    /* iteration limit, violated invariant, unexpected failure */
} ancl_status;

typedef enum { ANCL_INPUT_OPERATOR = 1, ANCL_INPUT_PROFILE = 2 } ancl_input_kind;

typedef enum { ANCL_DIAGRAM_ASCII = 0, ANCL_DIAGRAM_SVG = 1 } ancl_diagram_format;

/* Operator (shifted-diagonal) or spectral profile. */
typedef struct ancl_input ancl_input;

ANCL_API const char* ancl_version(void);

/* Message of the most recent failure on the calling thread ("" if none). */
ANCL_API const char* ancl_last_error(void);

/* Strings returned through char** outputs are owned by the caller. */
ANCL_API void ancl_string_free(char* s);

ANCL_API ancl_status ancl_set_tolerance(double tau);
ANCL_API double ancl_get_tolerance(void);

/* Operator JSON (has a "map" member) or profile JSON. */
ANCL_API ancl_status ancl_input_parse(const char* json, ancl_input** out);
/* Catalog entry by name. */
ANCL_API ancl_status ancl_input_catalog(const char* name, ancl_input** out);
ANCL_API void ancl_input_free(ancl_input* in);
ANCL_API ancl_input_kind ancl_input_get_kind(const ancl_input* in);
ANCL_API ancl_status ancl_input_to_json(const ancl_input* in, char** out);
/* 1 when both inputs are structurally equal. */
ANCL_API int ancl_input_equal(const ancl_input* a, const ancl_input* b);

/* JSON array of {"name", "summary", "expected"}. */
ANCL_API ancl_status ancl_catalog_list(char** out);

ANCL_API ancl_status ancl_spectrum(const ancl_input* in, char** out_json);
ANCL_API ancl_status ancl_classify(const ancl_input* in, char** out_json);
/* ANCL_ERR_NOT_MEMBER outside the closure. */
ANCL_API ancl_status ancl_decompose(const ancl_input* in, char** out_json);
/* Positive profile, or the modulus |T| of an operator. */
ANCL_API ancl_status ancl_diagram(const ancl_input* in, ancl_diagram_format format, char** out);
/* CSV n,norm_est,min_sv_est,gap_to_symbolic; operators only. */
ANCL_API ancl_status ancl_oracle(const ancl_input* in, const int64_t* sizes, size_t count, char** out_csv);
/* JSON report; *all_passed receives 1 when no check failed. */
ANCL_API ancl_status ancl_verify(const ancl_input* in, char** out_json, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif
