#ifndef STEPGRAPHON_H
#define STEPGRAPHON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SgParameter {
  // Independence ratio.
  SG_PARAMETER_ALPHA = 0,
  SG_PARAMETER_CHROMATIC = 1,
  SG_PARAMETER_CLIQUE = 2,
  SG_PARAMETER_FRACTIONAL_CHROMATIC = 3,
  SG_PARAMETER_FRACTIONAL_CLIQUE = 4,
} SgParameter;

typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_UTF8 = 2,
  SG_STATUS_PARSE = 3,
  SG_STATUS_INVALID_GRAPHON = 4,
  SG_STATUS_INVALID_ARGUMENT = 5,
  SG_STATUS_TOO_LARGE = 6,
  // The simplex pivot limit or the b-fold colour ceiling was reached.
  SG_STATUS_BUDGET = 7,
  // An internal consistency check failed. Always a bug.
  SG_STATUS_INVARIANT = 8,
  SG_STATUS_PANIC = 9,
} SgStatus;

// Opaque finite simple graph.
typedef struct SgGraph SgGraph;

// Opaque step graphon.
typedef struct SgGraphon SgGraphon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Borrowed; valid
// until the next call into this library on the same thread.
const char *sg_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void sg_string_free(char *s);

// Parses a graphon in the `blocks`/`measures` text format.
//
// # Safety
// `source` must be a nul-terminated string; `out` must be writable.
enum SgStatus sg_graphon_parse(const char *source, struct SgGraphon **out);

// # Safety
// `w` must be null or a handle from this library that has not been freed.
void sg_graphon_free(struct SgGraphon *w);

// Parses a finite graph in the `vertices` text format.
//
// # Safety
// `source` must be a nul-terminated string; `out` must be writable.
enum SgStatus sg_graph_parse(const char *source, struct SgGraph **out);

// # Safety
// `g` must be null or a handle from this library that has not been freed.
void sg_graph_free(struct SgGraph *g);

// # Safety
// `w` must be a live handle; `out` must be writable.
enum SgStatus sg_graphon_blocks(const struct SgGraphon *w, size_t *out);

// Serializes the graphon back to its text format.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum SgStatus sg_graphon_to_string(const struct SgGraphon *w, char **out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum SgStatus sg_graph_to_string(const struct SgGraph *g, char **out);

// Exact value of a graphon parameter as `p/q`, or `inf`.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum SgStatus sg_parameter(const struct SgGraphon *w, enum SgParameter parameter, char **out);

// Homomorphism density of `h` in `w`, or the induced density when
// `induced` is set.
//
// # Safety
// `h` and `w` must be live handles; `out` must be writable.
enum SgStatus sg_density(const struct SgGraph *h,
                         const struct SgGraphon *w,
                         bool induced,
                         char **out);

// Exact cut distance between `a` and `b` over their common refinement,
// without relabeling.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum SgStatus sg_cut_norm(const struct SgGraphon *a, const struct SgGraphon *b, char **out);

// Whether no odd hole or antihole of length at most `upto` has positive
// induced density. `upto` must be odd and at least 5.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum SgStatus sg_subgraph_perfect(const struct SgGraphon *w, size_t upto, bool *out);

// Whether every restriction has equal chromatic and clique numbers.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum SgStatus sg_inheritance_perfect(const struct SgGraphon *w, bool *out);

// Polyton membership of the block-constant point whose coordinates are the
// `len` rational strings in `coordinates`.
//
// # Safety
// `w` must be a live handle; `coordinates` must point to `len` valid
// strings; `out` must be writable.
enum SgStatus sg_polyton_contains(const struct SgGraphon *w,
                                  const char *const *coordinates,
                                  size_t len,
                                  bool *out);

// Samples an `n`-vertex graph from `w` with a seeded generator.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum SgStatus sg_sample(const struct SgGraphon *w, size_t n, uint64_t seed, struct SgGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STEPGRAPHON_H */
