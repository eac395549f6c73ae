#ifndef KCOLLAPSE_H
#define KCOLLAPSE_H

/* Generated by cbindgen from kcollapse-ffi; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible entry point.
typedef enum KcStatus {
  KC_STATUS_OK = 0,
  // A required pointer argument was null.
  KC_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  KC_STATUS_INVALID_UTF8 = 2,
  // The edge list could not be parsed.
  KC_STATUS_PARSE_ERROR = 3,
  // Node id out of range or label unknown.
  KC_STATUS_UNKNOWN_NODE = 4,
  // Unrecognized method name or out-of-range numeric argument.
  KC_STATUS_INVALID_ARGUMENT = 5,
  // The computation failed; see kc_last_error_message.
  KC_STATUS_RUNTIME_ERROR = 6,
  // A panic was caught at the boundary.
  KC_STATUS_PANIC = 7,
} KcStatus;

// One collapse run: the removed edges, their count, and the trace.
typedef struct KcCollapseResult KcCollapseResult;

// Parsed graph plus its core decomposition, built once at load.
typedef struct KcGraph KcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse an edge list (one `u v` pair per line, `#`/`%` comments allowed)
// into a graph handle. The handle owns its memory; release it with
// `kc_graph_free`.
enum KcStatus kc_graph_parse(const char *text, bool skip_header, struct KcGraph **out);

// Load an edge-list file from disk. See `kc_graph_parse` for the format.
enum KcStatus kc_graph_load_path(const char *path, bool skip_header, struct KcGraph **out);

// Release a graph handle. Null is a no-op.
void kc_graph_free(struct KcGraph *g);

// Number of nodes, or 0 for a null handle.
size_t kc_graph_node_count(const struct KcGraph *g);

// Number of edges, or 0 for a null handle.
size_t kc_graph_edge_count(const struct KcGraph *g);

// Largest core value in the graph, or 0 for a null handle.
uint32_t kc_graph_max_core(const struct KcGraph *g);

// Resolve a node label to its dense id.
enum KcStatus kc_graph_node_by_label(const struct KcGraph *g, const char *label, size_t *out);

// Copy a node's label into a fresh string; release it with
// `kc_string_free`.
enum KcStatus kc_graph_node_label(const struct KcGraph *g, size_t node, char **out);

// Core value of a node.
enum KcStatus kc_core_value(const struct KcGraph *g, size_t node, uint32_t *out);

// Core strength of a node. Fails with a runtime error for core-0 nodes,
// where the quantity is undefined.
enum KcStatus kc_core_strength(const struct KcGraph *g, size_t node, uint32_t *out);

// Whether the node sits on its core's corona (core strength exactly 1).
enum KcStatus kc_is_corona(const struct KcGraph *g, size_t node, bool *out);

// Run one collapse method ("tnc", "atnc", "red", "rnd", "knm", or "sv")
// against a target node. Release the result with `kc_result_free`.
enum KcStatus kc_collapse(const struct KcGraph *g,
                          size_t target,
                          const char *method,
                          uint64_t seed,
                          struct KcCollapseResult **out);

// Number of removed edges (the method's NR figure), or 0 on null.
size_t kc_result_nr(const struct KcCollapseResult *r);

// Core level the collapse was fought at, or 0 on null.
uint32_t kc_result_level(const struct KcCollapseResult *r);

// Endpoints of the i-th removed edge, in removal order.
enum KcStatus kc_result_edge(const struct KcCollapseResult *r, size_t i, size_t *u, size_t *v);

// Whole result (method, target, removed edges, supporter trace) as a JSON
// document; release it with `kc_string_free`.
enum KcStatus kc_result_json(const struct KcCollapseResult *r, char **out);

// Release a collapse result. Null is a no-op.
void kc_result_free(struct KcCollapseResult *r);

// Run a whole-graph sweep and return the report as JSON. `methods` is a
// comma-separated subset of the six method names, or null for all of
// them. Release the string with `kc_string_free`.
enum KcStatus kc_sweep_json(const struct KcGraph *g,
                            const char *methods,
                            uint64_t seed,
                            size_t runs,
                            char **out);

// Release a string allocated by this library. Null is a no-op.
void kc_string_free(char *s);

// Message describing the calling thread's most recent failure, or null if
// none. The pointer stays valid until the next failing call on the same
// thread; do not free it.
const char *kc_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KCOLLAPSE_H */
