#include <stdio.h>
#include "qkernel.h"

int main(void) {
    QkComplex a = {0.5, 0.0}, q = {0.5, 0.0}, out;
    if (qk_poch(a, q, 3, &out) != QK_STATUS_OK) {
        fprintf(stderr, "%s\n", qk_last_error());
        return 1;
    }
    QkConfig *cfg = qk_config_new();
    qk_config_set_tolerance(cfg, 1e-8);
    const char *ids[] = {"rogers_6phi5"};
    QkSuite *suite = NULL;
    if (qk_suite_run(cfg, ids, 1, 2, 7, 1, &suite) != QK_STATUS_OK) {
        qk_config_free(cfg);
        return 1;
    }
    QkSummary s;
    qk_suite_summary(suite, &s);
    char *json = NULL;
    qk_suite_to_json(suite, cfg, true, &json);
    printf("%zu %zu %s\n", s.total, s.pass, qk_suite_id(suite, 0));
    qk_string_free(json);
    qk_suite_free(suite);
    qk_config_free(cfg);
    return s.fail == 0 ? 0 : 1;
}
