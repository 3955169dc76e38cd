#include <stdio.h>
#include <string.h>
#include "gorfro.h"

int main(void) {
    GorfroReport *report = NULL;
    if (gorfro_check_example("veronese:1,3", NULL, 0, &report) != GORFRO_STATUS_OK) {
        fprintf(stderr, "check failed: %s\n", gorfro_last_error());
        return 1;
    }
    GorfroSummary s;
    gorfro_report_summary(report, &s);
    printf("pd=%zu type=%zu gorenstein=%u\n", s.pd, s.cm_type, s.gorenstein);
    for (size_t k = 0; k < s.betti_len; k++) {
        size_t p, q, b;
        gorfro_report_betti(report, k, &p, &q, &b);
        printf("b%zu,%zu=%zu\n", p, q, b);
    }
    gorfro_report_free(report);

    int64_t w[3] = {0, 1, 0};
    uint8_t holds = 0;
    uint64_t n = 0;
    gorfro_subcanonical("A3", w, 3, &holds, &n);
    printf("holds=%u N=%llu\n", holds, (unsigned long long)n);

    GorfroStatus st = gorfro_check_example("nope:1", NULL, 0, &report);
    printf("status=%d null=%d\n", (int)st, report == NULL);
    return 0;
}
