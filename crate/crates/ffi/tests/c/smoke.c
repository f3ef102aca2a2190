#include <stdio.h>
#include <string.h>

#include "astheno.h"

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    AsthenoGeometry g = {1, 1, false, true};
    AsthenoForm *eta = NULL, *d = NULL, *bad = NULL;
    char *text = NULL;

    CHECK(astheno_form_parse("eta1", &eta) == ASTHENO_STATUS_OK);
    CHECK(astheno_form_d(eta, ASTHENO_CONVENTION_GRADED, &g, &d) == ASTHENO_STATUS_OK);
    CHECK(astheno_form_to_text(d, &text) == ASTHENO_STATUS_OK);
    CHECK(strcmp(text, "a1*Phi1") == 0);
    astheno_string_free(text);

    CHECK(astheno_form_parse("Phi3", &bad) == ASTHENO_STATUS_PARSE_ERROR);
    CHECK(bad == NULL);
    CHECK(strstr(astheno_last_error(), "Phi3") != NULL);

    AsthenoVerdict v;
    AsthenoGeometry g12 = {1, 2, true, true};
    CHECK(astheno_classify(ASTHENO_CONDITION_ASTHENO, &g12, ASTHENO_FACTOR_ALPHA_SASAKIAN,
                           ASTHENO_FACTOR_COSYMPLECTIC, ASTHENO_CONVENTION_GRADED, &v,
                           NULL) == ASTHENO_STATUS_OK);
    CHECK(v == ASTHENO_VERDICT_IDENTICALLY_ZERO);

    astheno_form_free(eta);
    astheno_form_free(d);
    printf("ok %s\n", astheno_version());
    return 0;
}
