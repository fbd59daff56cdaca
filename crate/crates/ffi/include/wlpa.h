#ifndef WLPA_H
#define WLPA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WlpaStatus {
  WLPA_STATUS_OK = 0,
  WLPA_STATUS_NULL_POINTER = 1,
  WLPA_STATUS_INVALID_UTF8 = 2,
  WLPA_STATUS_PARSE = 3,
  WLPA_STATUS_PRECONDITION = 4,
  WLPA_STATUS_INTERNAL = 5,
} WlpaStatus;

/*
 The reduction system of a graph over a coefficient ring.
 */
typedef struct WlpaAlgebra WlpaAlgebra;

/*
 A validated weighted graph.
 */
typedef struct WlpaGraph WlpaGraph;

/*
 Parses a graph file. On success `*out` receives a new handle.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum WlpaStatus wlpa_graph_parse(const char *text, struct WlpaGraph **out);

/*
 # Safety
 `graph` must come from [`wlpa_graph_parse`] and not be used afterwards.
 */
void wlpa_graph_free(struct WlpaGraph *graph);

/*
 Builds the algebra of `graph` over `ring` (`"Z"`, `"Q"` or `"Fp:<p>"`).
 The algebra keeps its own reference to the graph.

 # Safety
 `graph` must be a live handle, `ring` a NUL-terminated string and `out`
 a valid pointer.
 */
enum WlpaStatus wlpa_algebra_new(const struct WlpaGraph *graph,
                                 const char *ring,
                                 struct WlpaAlgebra **out);

/*
 # Safety
 `algebra` must come from [`wlpa_algebra_new`] and not be used afterwards.
 */
void wlpa_algebra_free(struct WlpaAlgebra *algebra);

/*
 Normal form of `expr`, printed in the expression syntax.

 # Safety
 Pointers must be valid; `expr` NUL-terminated.
 */
enum WlpaStatus wlpa_normal_form(const struct WlpaAlgebra *algebra, const char *expr, char **out);

/*
 Normal form of the product `left · right`.

 # Safety
 Pointers must be valid; strings NUL-terminated.
 */
enum WlpaStatus wlpa_multiply(const struct WlpaAlgebra *algebra,
                              const char *left,
                              const char *right,
                              char **out);

/*
 Local valuation of `expr`; `-1` stands for `-inf` (the zero element).

 # Safety
 Pointers must be valid; `expr` NUL-terminated.
 */
enum WlpaStatus wlpa_valuation(const struct WlpaAlgebra *algebra, const char *expr, int64_t *out);

/*
 Classification report of `graph` over `ring` as JSON.

 # Safety
 Pointers must be valid; `ring` NUL-terminated.
 */
enum WlpaStatus wlpa_classify_json(const struct WlpaGraph *graph, const char *ring, char **out);

/*
 Message of the last failed call on this thread, or null. The pointer
 stays valid until the next call into this library on the same thread.
 */
const char *wlpa_last_error_message(void);

/*
 # Safety
 `s` must be a string returned by this library, or null.
 */
void wlpa_string_free(char *s);

#endif /* WLPA_H */
