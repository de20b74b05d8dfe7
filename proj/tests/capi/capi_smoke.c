/* SPDX-License-Identifier: Apache-2.0 */
/* Exercises the C header from C: handles, status codes, ownership. */
#include "ancl/ancl.h"

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                  \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                               \
        }                                                             \
    } while (0)

int main(void) {
    ancl_input* op = NULL;
    char* out = NULL;
    int ok = 0;
    const int64_t sizes[] = {4, 64, 1024};

    EXPECT(ancl_input_catalog("limit-diagonal", &op) == ANCL_OK);
    EXPECT(ancl_input_get_kind(op) == ANCL_INPUT_OPERATOR);

    EXPECT(ancl_classify(op, &out) == ANCL_OK);
    EXPECT(strstr(out, "\"in_AN_closure\": true") != NULL);
    EXPECT(strstr(out, "\"norm_attaining\": false") != NULL);
    ancl_string_free(out);

    EXPECT(ancl_oracle(op, sizes, 3, &out) == ANCL_OK);
    EXPECT(strstr(out, "1024,0.9990234375,") != NULL);
    ancl_string_free(out);

    EXPECT(ancl_verify(op, &out, &ok) == ANCL_OK);
    EXPECT(ok == 1);
    ancl_string_free(out);

    EXPECT(ancl_input_to_json(op, &out) == ANCL_OK);
    {
        ancl_input* back = NULL;
        EXPECT(ancl_input_parse(out, &back) == ANCL_OK);
        EXPECT(ancl_input_equal(op, back) == 1);
        ancl_input_free(back);
    }
    ancl_string_free(out);
    ancl_input_free(op);

    EXPECT(ancl_input_catalog("adjoint-stretch", &op) == ANCL_OK);
    EXPECT(ancl_decompose(op, &out) == ANCL_ERR_NOT_MEMBER);
    EXPECT(strlen(ancl_last_error()) > 0);
    ancl_input_free(op);

    op = NULL;
    EXPECT(ancl_input_catalog("no-such-entry", &op) == ANCL_ERR_PARSE);
    EXPECT(op == NULL);
    EXPECT(ancl_input_parse("{\"atoms\": [{\"value\": -1, \"mult\": \"inf\"}]}", &op) == ANCL_OK);
    EXPECT(ancl_input_get_kind(op) == ANCL_INPUT_PROFILE);
    EXPECT(ancl_diagram(op, ANCL_DIAGRAM_ASCII, &out) == ANCL_ERR_CONTRACT);
    EXPECT(ancl_oracle(op, sizes, 3, &out) == ANCL_ERR_CONTRACT);
    ancl_input_free(op);

    EXPECT(ancl_classify(NULL, &out) == ANCL_ERR_CONTRACT);
    EXPECT(ancl_set_tolerance(-1.0) != ANCL_OK);

    if (failures == 0) printf("capi smoke: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
