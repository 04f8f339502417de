#ifndef QDEFORM_H
#define QDEFORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Report encoding for `qd_session_run`.
typedef enum QdFormat {
  QD_FORMAT_HUMAN = 0,
  QD_FORMAT_MACHINE = 1,
} QdFormat;

// Result codes. `CHECK_FAILED` still produces a report.
typedef enum QdStatus {
  QD_STATUS_OK = 0,
  QD_STATUS_CHECK_FAILED = 1,
  QD_STATUS_CONFIG_ERROR = 2,
  QD_STATUS_INVALID_ARGUMENT = 3,
  QD_STATUS_INTERNAL = 4,
} QdStatus;

// Opaque session handle.
typedef struct QdSession QdSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Opens a session on a built-in preset such as `motivational-q2`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum QdStatus qd_session_from_preset(const char *name, struct QdSession **out);

// Opens a session on configuration text.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum QdStatus qd_session_from_config(const char *text, struct QdSession **out);

// Overrides the degree bound and `t` cap; zero keeps the current value.
//
// # Safety
// `session` must come from `qd_session_from_*` and not be freed.
enum QdStatus qd_session_set_options(struct QdSession *session,
                                     uint32_t degree_bound,
                                     uint32_t t_cap);

// Runs `validate`, `deform`, `mu1`, `cocycle`, `certify` or `selftest` and
// stores the report in `*report` (release with `qd_string_free`).
//
// # Safety
// `session` must be live, `command` NUL-terminated and `report` valid.
enum QdStatus qd_session_run(const struct QdSession *session,
                             const char *command,
                             enum QdFormat format,
                             char **report);

// # Safety
// `session` must be null or come from `qd_session_from_*`, freed once.
void qd_session_free(struct QdSession *session);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void qd_string_free(char *s);

// Message for the last failing call on this thread; empty if none. Valid
// until the next call into this library from the same thread.
const char *qd_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDEFORM_H */
