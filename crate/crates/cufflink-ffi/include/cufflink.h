#ifndef CUFFLINK_H
#define CUFFLINK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. Zero is success; everything else names the
 * first thing that went wrong.
 */
typedef enum CufflinkStatus {
  CufflinkStatus_Ok = 0,
  CufflinkStatus_NullArgument = 1,
  CufflinkStatus_BadUtf8 = 2,
  CufflinkStatus_ParseError = 3,
  CufflinkStatus_InvalidDiagram = 4,
  CufflinkStatus_BadMode = 5,
  CufflinkStatus_Refused = 6,
  CufflinkStatus_PipelineError = 7,
  CufflinkStatus_CertifyFailed = 8,
} CufflinkStatus;

/**
 * A finished certificate bundle.
 */
typedef struct CufflinkBundle CufflinkBundle;

/**
 * A parsed spine diagram.
 */
typedef struct CufflinkSpine CufflinkSpine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message recorded by the most recent failing call on this
 * thread, or null if it succeeded. Free with `cufflink_string_free`.
 */
char *cufflink_last_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must have come from this library and not been freed before.
 */
void cufflink_string_free(char *s);

/**
 * Parses spine text into a handle. On success stores the handle in
 * `out`; the caller releases it with `cufflink_spine_free`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CufflinkStatus cufflink_spine_parse(const char *text, struct CufflinkSpine **out);

/**
 * Releases a spine handle. Null is ignored.
 *
 * # Safety
 * `spine` must have come from `cufflink_spine_parse` and not been
 * freed before.
 */
void cufflink_spine_free(struct CufflinkSpine *spine);

/**
 * Genus of the spine, i.e. its number of loops, or 0 for null.
 *
 * # Safety
 * `spine` must be a live handle or null.
 */
uintptr_t cufflink_spine_genus(const struct CufflinkSpine *spine);

/**
 * Number of crossings in the spine, or 0 for null.
 *
 * # Safety
 * `spine` must be a live handle or null.
 */
uintptr_t cufflink_spine_crossings(const struct CufflinkSpine *spine);

/**
 * Checks that the spine is a plane diagram of a handcuff spine. On
 * failure the message lists the first problem.
 *
 * # Safety
 * `spine` must be a live handle or null.
 */
enum CufflinkStatus cufflink_spine_validate(const struct CufflinkSpine *spine);

/**
 * Runs the unknotting pipeline and certificate emission. `mode` is 1
 * for the whole-system reading, 2 for the per-loop reading (which
 * refuses spines whose loops share a surface piece). On success
 * stores a bundle handle in `out`.
 *
 * # Safety
 * `spine` must be a live handle and `out` a valid pointer.
 */
enum CufflinkStatus cufflink_unknot(const struct CufflinkSpine *spine,
                                    int mode,
                                    struct CufflinkBundle **out);

/**
 * Pushes the loops to dual position and records the meeting pattern
 * alongside the usual certificates. On success stores a bundle
 * handle in `out`.
 *
 * # Safety
 * `spine` must be a live handle and `out` a valid pointer.
 */
enum CufflinkStatus cufflink_dualize(const struct CufflinkSpine *spine,
                                     struct CufflinkBundle **out);

/**
 * 1 if every certificate in the bundle checks out, else 0.
 *
 * # Safety
 * `bundle` must be a live handle or null.
 */
int cufflink_bundle_passes(const struct CufflinkBundle *bundle);

/**
 * The bundle in its text form. Free with `cufflink_string_free`.
 * Returns null for a null handle.
 *
 * # Safety
 * `bundle` must be a live handle or null.
 */
char *cufflink_bundle_text(const struct CufflinkBundle *bundle);

/**
 * Releases a bundle handle. Null is ignored.
 *
 * # Safety
 * `bundle` must have come from this library and not been freed
 * before.
 */
void cufflink_bundle_free(struct CufflinkBundle *bundle);

/**
 * Re-derives every certificate in a bundle text. `Ok` means the
 * bundle is sound; `CertifyFailed` lists the problems in the
 * message, one per line.
 *
 * # Safety
 * `text` must be a NUL-terminated string.
 */
enum CufflinkStatus cufflink_certify_text(const char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUFFLINK_H */
