#include <math.h>
#include <stdio.h>
#include <string.h>

#include "partition_saddle.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    PsSpec *spec = NULL;
    CHECK(ps_spec_parse("classical", &spec) == PS_STATUS_OK);

    PsCounts *counts = NULL;
    CHECK(ps_exact_counts(spec, 100, &counts) == PS_STATUS_OK);
    char *text = NULL;
    CHECK(ps_counts_get(counts, 100, &text) == PS_STATUS_OK);
    CHECK(strcmp(text, "190569292") == 0);
    ps_string_free(text);
    CHECK(ps_counts_get(counts, 101, &text) == PS_STATUS_OUT_OF_RANGE);
    CHECK(ps_last_error() != NULL);
    ps_counts_free(counts);

    double log_p = 0.0;
    CHECK(ps_cauchy_log_count(spec, 100, 0, &log_p) == PS_STATUS_OK);
    CHECK(fabs(exp(log_p) - 190569292.0) < 0.25);

    PsSpec *bad = NULL;
    CHECK(ps_spec_parse("ap(3,4", &bad) == PS_STATUS_PARSE);
    CHECK(bad == NULL);

    ps_spec_free(spec);
    printf("ok\n");
    return 0;
}
