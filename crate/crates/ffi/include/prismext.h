/* Generated by cbindgen; do not edit. */

#ifndef PRISMEXT_H
#define PRISMEXT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Graph builders for [`px_graph_build`].
 */
typedef enum {
  PX_FAMILY_PATH = 0,
  PX_FAMILY_CYCLE = 1,
  PX_FAMILY_STAR = 2,
  PX_FAMILY_COMPLETE = 3,
  PX_FAMILY_HYPERCUBE = 4,
} PxFamily;

/**
 * Result of a fallible call.
 */
typedef enum {
  PX_STATUS_OK = 0,
  PX_STATUS_NULL_POINTER = 1,
  PX_STATUS_INVALID_UTF8 = 2,
  PX_STATUS_PARSE = 3,
  PX_STATUS_INVALID_GRAPH = 4,
  PX_STATUS_INVALID_COLORING = 5,
  PX_STATUS_INVALID_PARAMETER = 6,
  PX_STATUS_PRECONDITION = 7,
  PX_STATUS_BUDGET_EXHAUSTED = 8,
  PX_STATUS_INTERNAL = 9,
} PxStatus;

/**
 * Result of an extension attempt.
 */
typedef enum {
  PX_VERDICT_EXTENDED = 0,
  PX_VERDICT_NOT_EXTENDABLE = 1,
  PX_VERDICT_UNKNOWN = 2,
} PxVerdict;

/**
 * Opaque handle of a partial edge coloring.
 */
typedef struct PxColoring PxColoring;

/**
 * Opaque graph handle.
 */
typedef struct PxGraph PxGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until
 * the next failing call.
 */
const char *px_last_error(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void px_string_free(char *s);

/**
 * Parses a graph in the text or JSON format.
 *
 * # Safety
 * `src` is a nul-terminated string; `out` is writable.
 */
PxStatus px_graph_parse(const char *src, PxGraph **out);

/**
 * Builds a graph from `m` edges given as `2 * m` vertex ids.
 *
 * # Safety
 * `edges` points to `2 * m` values (or is null when `m` is 0); `out` is
 * writable.
 */
PxStatus px_graph_from_edges(size_t n, const size_t *edges, size_t m, PxGraph **out);

/**
 * Builds a member of a standard family. `n` is the vertex count, or the
 * dimension for hypercubes and the number of leaves for stars.
 *
 * # Safety
 * `out` is writable.
 */
PxStatus px_graph_build(PxFamily family, size_t n, PxGraph **out);

/**
 * Builds `K_{m,n}`.
 *
 * # Safety
 * `out` is writable.
 */
PxStatus px_graph_complete_bipartite(size_t m, size_t n, PxGraph **out);

/**
 * Builds the prism `G□K2`: copy `c` of vertex `v` is `c * n + v`.
 *
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
PxStatus px_graph_prism(const PxGraph *g, PxGraph **out);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` is null or a live graph handle.
 */
size_t px_graph_vertex_count(const PxGraph *g);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `g` is null or a live graph handle.
 */
size_t px_graph_edge_count(const PxGraph *g);

/**
 * Writes the graph in the text format.
 *
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
PxStatus px_graph_to_text(const PxGraph *g, char **out);

/**
 * Chromatic index. `max_nodes` 0 means no limit.
 *
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
PxStatus px_chromatic_index(const PxGraph *g, uint64_t max_nodes, uint32_t *out);

/**
 * Releases a graph. Colorings keep their own reference to it.
 *
 * # Safety
 * `g` is null or a graph handle not yet freed.
 */
void px_graph_free(PxGraph *g);

/**
 * An empty coloring of `g` with colors `1..=palette`.
 *
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
PxStatus px_coloring_empty(const PxGraph *g, uint32_t palette, PxColoring **out);

/**
 * Parses a coloring of `g` in the text or JSON format.
 *
 * # Safety
 * `g` is a live graph handle; `src` is a nul-terminated string; `out` is
 * writable.
 */
PxStatus px_coloring_parse(const PxGraph *g, const char *src, PxColoring **out);

/**
 * Colors edge `uv` with `color`, or uncolors it when `color` is 0. The
 * result must stay proper.
 *
 * # Safety
 * `c` is a live coloring handle.
 */
PxStatus px_coloring_set(PxColoring *c, size_t u, size_t v, uint32_t color);

/**
 * Color of edge `uv`, 0 when uncolored.
 *
 * # Safety
 * `c` is a live coloring handle; `out` is writable.
 */
PxStatus px_coloring_get(const PxColoring *c, size_t u, size_t v, uint32_t *out);

/**
 * Number of colored edges, or 0 for a null handle.
 *
 * # Safety
 * `c` is null or a live coloring handle.
 */
size_t px_coloring_colored_count(const PxColoring *c);

/**
 * Writes the coloring in the text format.
 *
 * # Safety
 * `c` is a live coloring handle; `out` is writable.
 */
PxStatus px_coloring_to_text(const PxColoring *c, char **out);

/**
 * Releases a coloring.
 *
 * # Safety
 * `c` is null or a coloring handle not yet freed.
 */
void px_coloring_free(PxColoring *c);

/**
 * Exhaustive search for an extension. `max_nodes` 0 means no limit. On
 * `Extended` the total coloring is stored in `extension` when it is not
 * null; otherwise `extension` is set to null.
 *
 * # Safety
 * `c` is a live coloring handle; `verdict` is writable; `extension` is null
 * or writable.
 */
PxStatus px_extend_exhaustive(const PxColoring *c,
                              uint64_t max_nodes,
                              PxVerdict *verdict,
                              PxColoring **extension);

/**
 * Extends a precoloring of a prism with the matching constructive
 * extender. `trace`, when not null, receives the trace as JSON.
 *
 * # Safety
 * As [`px_extend_exhaustive`]; `trace` is null or writable.
 */
PxStatus px_extend_auto(const PxColoring *c,
                        uint64_t max_nodes,
                        PxVerdict *verdict,
                        PxColoring **extension,
                        char **trace);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRISMEXT_H */
