#include <math.h>
#include <stdio.h>
#include <string.h>

#include "diracgate.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    DgMatrix *cc = NULL;
    CHECK(dg_gate_named("CC", &cc) == DG_OK);
    CHECK(dg_matrix_dim(cc) == 4);
    double re = -1, im = -1;
    CHECK(dg_matrix_get(cc, 1, 0, &re, &im) == DG_OK);
    CHECK(re == 1.0 && im == 0.0);
    CHECK(dg_matrix_get(cc, 4, 0, &re, &im) == DG_ERR_DIMENSION);
    dg_matrix_free(cc);

    DgMatrix *bad = NULL;
    CHECK(dg_gate_compile("co(I,", &bad) == DG_ERR_PARSE);
    CHECK(bad == NULL);
    CHECK(strstr(dg_last_error_message(), "position 5") != NULL);

    double eps[4];
    CHECK(dg_landau_spectrum(1.0, 1.0, 3, eps) == DG_OK);
    CHECK(fabs(eps[1] - sqrt(2.0)) < 1e-15);

    char *json = NULL;
    CHECK(dg_table_scenario_json(1, &json) == DG_OK);
    CHECK(strstr(json, "\"delta_v_match\":true") != NULL);
    dg_string_free(json);

    printf("ok %s\n", dg_version());
    return 0;
}
