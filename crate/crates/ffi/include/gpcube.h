#ifndef GPCUBE_H
#define GPCUBE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by all entry points.
 */
typedef enum GpcubeStatus {
  GPCUBE_STATUS_OK = 0,
  GPCUBE_STATUS_NULL_POINTER = 1,
  GPCUBE_STATUS_INVALID_UTF8 = 2,
  GPCUBE_STATUS_PARSE = 3,
  GPCUBE_STATUS_INVALID_ARGUMENT = 4,
  GPCUBE_STATUS_RESOURCE_LIMIT = 5,
  GPCUBE_STATUS_INVARIANT_VIOLATION = 6,
  GPCUBE_STATUS_PANIC = 7,
} GpcubeStatus;

/**
 * Check suites for [`gpcube_check`].
 */
typedef enum GpcubeCheck {
  GPCUBE_CHECK_LINKS = 0,
  GPCUBE_CHECK_MORSE = 1,
  GPCUBE_CHECK_SPECIAL = 2,
  GPCUBE_CHECK_KERNEL = 3,
  GPCUBE_CHECK_DJ = 4,
  GPCUBE_CHECK_ALL = 5,
} GpcubeCheck;

/**
 * A ball of the cube complex.
 */
typedef struct GpcubeBall GpcubeBall;

/**
 * A parsed presentation graph together with its group.
 */
typedef struct GpcubeGraph GpcubeGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *gpcube_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void gpcube_string_free(char *s);

/**
 * Parses a graph in the text format (`name : order|inf`, `edge a b`).
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum GpcubeStatus gpcube_graph_parse(const char *text, struct GpcubeGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from [`gpcube_graph_parse`], freed once.
 */
void gpcube_graph_free(struct GpcubeGraph *g);

/**
 * # Safety
 * `g` must be a valid handle and `out` a valid pointer.
 */
enum GpcubeStatus gpcube_graph_vertex_count(const struct GpcubeGraph *g, size_t *out);

/**
 * SHA-256 of the canonical graph text, hex encoded; free with
 * [`gpcube_string_free`].
 *
 * # Safety
 * `g` must be a valid handle and `out` a valid pointer.
 */
enum GpcubeStatus gpcube_graph_fingerprint(const struct GpcubeGraph *g, char **out);

/**
 * Normal form of a word such as `"s, t^-2"`; free with
 * [`gpcube_string_free`].
 *
 * # Safety
 * `g` must be a valid handle, `word` a valid C string, `out` a valid pointer.
 */
enum GpcubeStatus gpcube_normalize(const struct GpcubeGraph *g, const char *word, char **out);

/**
 * Decides whether two words describe the same element.
 *
 * # Safety
 * `g` must be a valid handle, `a` and `b` valid C strings, `out` valid.
 */
enum GpcubeStatus gpcube_words_equal(const struct GpcubeGraph *g,
                                     const char *a,
                                     const char *b,
                                     bool *out);

/**
 * Builds the ball of the given radius; `budget` caps enumerated elements
 * and vertices.
 *
 * # Safety
 * `g` must be a valid handle and `out` a valid pointer.
 */
enum GpcubeStatus gpcube_ball_build(const struct GpcubeGraph *g,
                                    uint64_t radius,
                                    size_t budget,
                                    struct GpcubeBall **out);

/**
 * # Safety
 * `b` must be null or a handle from [`gpcube_ball_build`], freed once.
 */
void gpcube_ball_free(struct GpcubeBall *b);

/**
 * Number of cubes of dimension `dim` (vertices for `dim == 0`).
 *
 * # Safety
 * `b` must be a valid handle and `out` a valid pointer.
 */
enum GpcubeStatus gpcube_ball_cube_count(const struct GpcubeBall *b, size_t dim, size_t *out);

/**
 * # Safety
 * `b` must be a valid handle and `out` a valid pointer.
 */
enum GpcubeStatus gpcube_ball_interior_count(const struct GpcubeBall *b, size_t *out);

/**
 * # Safety
 * `b` must be a valid handle and `out` a valid pointer.
 */
enum GpcubeStatus gpcube_ball_euler_characteristic(const struct GpcubeBall *b, int64_t *out);

/**
 * Ball as JSON; free with [`gpcube_string_free`].
 *
 * # Safety
 * `b` must be a valid handle and `out` a valid pointer.
 */
enum GpcubeStatus gpcube_ball_json(const struct GpcubeBall *b, char **out);

/**
 * Runs a check suite on the ball of radius `radius`. `pass` receives the
 * verdict; if `json_out` is non-null it receives the JSON
 * certificate (free with [`gpcube_string_free`]).
 *
 * # Safety
 * `g` must be a valid handle, `pass` a valid pointer, `json_out`
 * null or valid.
 */
enum GpcubeStatus gpcube_check(const struct GpcubeGraph *g,
                               uint64_t radius,
                               size_t budget,
                               enum GpcubeCheck which,
                               bool *pass,
                               char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GPCUBE_H */
