#include <stdio.h>
#include <string.h>

#include "qdeform.h"

int main(void) {
    QdSession *s = NULL;
    if (qd_session_from_preset("motivational-q2", &s) != QD_STATUS_OK) {
        fprintf(stderr, "open: %s\n", qd_last_error());
        return 10;
    }
    qd_session_set_options(s, 1, 0);
    char *report = NULL;
    QdStatus st = qd_session_run(s, "deform", QD_FORMAT_HUMAN, &report);
    if (st != QD_STATUS_OK || strstr(report, "w1 w2 + w2 w1 + t * w3 * g[(1,0)] = 0") == NULL) {
        return 11;
    }
    printf("%s", report);
    qd_string_free(report);
    if (qd_session_run(s, "bogus", QD_FORMAT_HUMAN, &report) != QD_STATUS_INVALID_ARGUMENT || report != NULL) {
        return 12;
    }
    qd_session_free(s);
    if (qd_session_from_preset("nope", &s) != QD_STATUS_CONFIG_ERROR || strlen(qd_last_error()) == 0) {
        return 13;
    }
    return 0;
}
