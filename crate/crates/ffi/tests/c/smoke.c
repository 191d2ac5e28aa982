#include <stdio.h>
#include <string.h>
#include "tpsgeo.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond, tpsgeo_last_error()); return 1; } } while (0)

int main(void) {
    TpsgeoModel *m = NULL;
    CHECK(tpsgeo_model_from_json("{\"model\": \"quadratic\", \"parameters\": {\"Q\": [[1.0, 0.0], [0.0, 3.0]]}}", &m) == TPSGEO_STATUS_OK);
    CHECK(tpsgeo_model_nvars(m) == 2);

    double p[2] = {0.5, 1.0};
    double h[4];
    size_t len = 4;
    CHECK(tpsgeo_model_hessian(m, p, 2, h, &len) == TPSGEO_STATUS_OK);
    CHECK(h[0] == 1.0 && h[1] == 0.0 && h[2] == 0.0 && h[3] == 3.0);

    char *js = NULL;
    CHECK(tpsgeo_model_analyze(m, p, 2, &js) == TPSGEO_STATUS_OK);
    CHECK(strstr(js, "positive_definite") != NULL);
    tpsgeo_string_free(js);
    tpsgeo_model_free(m);

    CHECK(tpsgeo_model_from_json("{oops", &m) == TPSGEO_STATUS_PARSE);
    CHECK(m == NULL);
    CHECK(strlen(tpsgeo_last_error()) > 0);

    TpsgeoReport *r = NULL;
    size_t dim = 0;
    CHECK(tpsgeo_killing(TPSGEO_SPACE_SYMPL, 1, 2, &dim, &r) == TPSGEO_STATUS_OK);
    CHECK(dim == 8);
    CHECK(tpsgeo_report_all_pass(r) == 1);
    tpsgeo_report_free(r);

    CHECK(tpsgeo_curvature(TPSGEO_SPACE_TPS, 2, &r) == TPSGEO_STATUS_OK);
    char *txt = NULL;
    CHECK(tpsgeo_report_render(r, 0, &txt) == TPSGEO_STATUS_OK);
    CHECK(strstr(txt, "\"scalar\": \"1\"") != NULL);
    tpsgeo_string_free(txt);
    tpsgeo_report_free(r);

    printf("ok %s\n", tpsgeo_version());
    return 0;
}
