#ifndef LAMBDATREE_H
#define LAMBDATREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum LtAlgorithm {
  LT_ALGORITHM_AUTO = 0,
  LT_ALGORITHM_CK = 1,
  LT_ALGORITHM_FAST = 2,
  LT_ALGORITHM_LINEAR = 3,
} LtAlgorithm;

// Status codes returned by every fallible call.
typedef enum LtStatus {
  LT_STATUS_OK = 0,
  LT_STATUS_NULL_POINTER = 1,
  LT_STATUS_PARSE = 2,
  LT_STATUS_INVALID_ARGUMENT = 3,
  // The solver has no witness to return (infeasible decision, or none requested).
  LT_STATUS_NO_WITNESS = 4,
  LT_STATUS_BUFFER_TOO_SMALL = 5,
  // An internal invariant failed; please report.
  LT_STATUS_INTERNAL = 6,
  LT_STATUS_PANIC = 7,
} LtStatus;

typedef enum LtTreeKind {
  LT_TREE_KIND_PATH = 0,
  LT_TREE_KIND_STAR = 1,
  LT_TREE_KIND_CATERPILLAR = 2,
  LT_TREE_KIND_BROOM = 3,
  LT_TREE_KIND_RANDOM = 4,
  LT_TREE_KIND_V45_STRESS = 5,
} LtTreeKind;

// The outcome of a solve or decision.
typedef struct LtResult LtResult;

// An immutable tree.
typedef struct LtTree LtTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty if none. Valid until the next
// failing call on the same thread.
const char *lt_last_error(void);

// Parses the edge-list text format (`n`, then `n-1` lines `u v`).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum LtStatus lt_tree_parse(const char *text, struct LtTree **out);

// Builds a tree from `n-1` edges stored as `2(n-1)` consecutive vertex ids.
//
// # Safety
// `edges` must point to `2*(n-1)` readable values (it may be null when `n == 1`).
enum LtStatus lt_tree_from_edges(size_t n, const uint32_t *edges, struct LtTree **out);

// Generates a tree; `delta == 0` means no target degree.
//
// # Safety
// `out` must be writable.
enum LtStatus lt_tree_generate(enum LtTreeKind kind,
                               size_t n,
                               size_t delta,
                               uint64_t seed,
                               struct LtTree **out);

// # Safety
// `t` must come from an `lt_tree_*` constructor and not be freed yet; null is ignored.
void lt_tree_free(struct LtTree *t);

// Vertex count; 0 for null.
//
// # Safety
// `t` must be a live tree handle or null.
size_t lt_tree_vertex_count(const struct LtTree *t);

// # Safety
// `t` must be a live tree handle or null.
size_t lt_tree_max_degree(const struct LtTree *t);

// Optimal L(2,1) span with a witness.
//
// # Safety
// `t` must be a live tree handle; `out` must be writable.
enum LtStatus lt_solve_l21(const struct LtTree *t, enum LtAlgorithm alg, struct LtResult **out);

// Optimal L(p,1) span with a witness.
//
// # Safety
// `t` must be a live tree handle; `out` must be writable.
enum LtStatus lt_solve_lp1(const struct LtTree *t,
                           uint32_t p,
                           enum LtAlgorithm alg,
                           struct LtResult **out);

// Decides whether a labeling of span `lambda` exists.
//
// # Safety
// `t` must be a live tree handle; `out` must be writable.
enum LtStatus lt_decide(const struct LtTree *t,
                        uint32_t p,
                        uint32_t lambda,
                        enum LtAlgorithm alg,
                        bool want_witness,
                        struct LtResult **out);

// # Safety
// `r` must be a live result handle or null.
bool lt_result_feasible(const struct LtResult *r);

// The span that was solved or decided.
//
// # Safety
// `r` must be a live result handle or null.
uint32_t lt_result_lambda(const struct LtResult *r);

// Copies the witness labels into `buf` (one per vertex). `*len` holds the buffer length on
// entry and the label count on return, also when the buffer is too small.
//
// # Safety
// `r` must be a live result handle; `buf` must have room for `*len` values.
enum LtStatus lt_result_labels(const struct LtResult *r, uint32_t *buf, size_t *len);

// # Safety
// `r` must come from a solve/decide call and not be freed yet; null is ignored.
void lt_result_free(struct LtResult *r);

// Checks an L(p,q)-labeling with all labels at most `lambda`; the answer goes to `*valid`.
//
// # Safety
// `t` must be a live tree handle; `labels` must hold `len` values; `valid` must be writable.
enum LtStatus lt_validate(const struct LtTree *t,
                          const uint32_t *labels,
                          size_t len,
                          uint32_t lambda,
                          uint32_t p,
                          uint32_t q,
                          bool *valid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAMBDATREE_H */
