#ifndef BDHILB_H
#define BDHILB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdint.h>
#include <stddef.h>

/*
 Status codes returned by every fallible function.
 */
typedef enum BdhStatus {
  BDH_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  BDH_STATUS_NULL_POINTER = 1,
  /*
   A string argument was not valid UTF-8.
   */
  BDH_STATUS_UTF8 = 2,
  /*
   Malformed input such as a decimal parameter.
   */
  BDH_STATUS_PARSE = 3,
  /*
   Input violating a precondition.
   */
  BDH_STATUS_INVALID = 4,
  /*
   A valid group outside the supported family.
   */
  BDH_STATUS_UNSUPPORTED = 5,
  /*
   A computed object failed one of its checks.
   */
  BDH_STATUS_VERIFICATION = 6,
  /*
   An internal error; the library state is unchanged.
   */
  BDH_STATUS_INTERNAL = 7,
} BdhStatus;

/*
 Opaque handle to a solved chart of one G-graph.
 */
typedef struct BdhChart BdhChart;

/*
 Opaque handle to a validated group `BD_2n(a)`.
 */
typedef struct BdhGroup BdhGroup;

/*
 Message of the last error on this thread; empty after a success. The
 pointer stays valid until the next call on this thread.
 */
const char *bdh_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and must not be used afterwards.
 */
void bdh_string_free(char *s);

/*
 Validates `BD_2n(a)` and creates a group handle.

 # Safety
 `out` must be a valid pointer to a handle slot.
 */
enum BdhStatus bdh_group_new(int64_t two_n, int64_t a, struct BdhGroup **out);

/*
 Releases a group handle. Null is ignored.

 # Safety
 `g` must come from [`bdh_group_new`] and must not be used afterwards.
 */
void bdh_group_free(struct BdhGroup *g);

/*
 `2n` of the group.

 # Safety
 `g` must be a live group handle or null (which gives 0).
 */
int64_t bdh_group_two_n(const struct BdhGroup *g);

/*
 `a` of the group.

 # Safety
 `g` must be a live group handle or null (which gives 0).
 */
int64_t bdh_group_a(const struct BdhGroup *g);

/*
 Group invariants and irreducible representations as JSON.

 # Safety
 `g` must be a live group handle and `out` a valid string slot.
 */
enum BdhStatus bdh_group_json(const struct BdhGroup *g, char **out);

/*
 All G-graphs with ideals and multiplicities as JSON.

 # Safety
 `g` must be a live group handle and `out` a valid string slot.
 */
enum BdhStatus bdh_ggraphs_json(const struct BdhGroup *g, char **out);

/*
 The McKay quiver with relations as JSON.

 # Safety
 `g` must be a live group handle and `out` a valid string slot.
 */
enum BdhStatus bdh_quiver_json(const struct BdhGroup *g, char **out);

/*
 The McKay quiver in Graphviz DOT.

 # Safety
 `g` must be a live group handle and `out` a valid string slot.
 */
enum BdhStatus bdh_quiver_dot(const struct BdhGroup *g, char **out);

/*
 Chart records of every G-graph, or of the one named by `graph` when it
 is not null, as a JSON list.

 # Safety
 `g` must be a live group handle, `graph` null or a C string, and `out`
 a valid string slot.
 */
enum BdhStatus bdh_charts_json(const struct BdhGroup *g, const char *graph, char **out);

/*
 Runs every check for the group and writes the report. Returns
 `Verification` (with the report written) when a check fails.

 # Safety
 `g` must be a live group handle and `out` a valid string slot.
 */
enum BdhStatus bdh_verify_json(const struct BdhGroup *g,
                               uint64_t seed,
                               uintptr_t samples,
                               char **out);

/*
 Creates the chart of the G-graph named by `key` (id, index or kind label).

 # Safety
 `g` must be a live group handle, `key` a C string and `out` a valid
 handle slot.
 */
enum BdhStatus bdh_chart_new(const struct BdhGroup *g, const char *key, struct BdhChart **out);

/*
 Releases a chart handle. Null is ignored.

 # Safety
 `c` must come from [`bdh_chart_new`] and must not be used afterwards.
 */
void bdh_chart_free(struct BdhChart *c);

/*
 Number of free parameters of the chart, or 0 for null.

 # Safety
 `c` must be a live chart handle or null.
 */
uintptr_t bdh_chart_num_params(const struct BdhChart *c);

/*
 The chart record as JSON.

 # Safety
 `c` must be a live chart handle and `out` a valid string slot.
 */
enum BdhStatus bdh_chart_json(const struct BdhChart *c, char **out);

/*
 The G-cluster ideal at the point `params` (comma-separated exact values
 in the order of the free parameters) with its verification report.
 Returns `Invalid` for points off the chart and `Verification` (with the
 report written) when the cluster checks fail.

 # Safety
 `c` must be a live chart handle, `params` a C string and `out` a valid
 string slot.
 */
enum BdhStatus bdh_chart_cluster_json(const struct BdhChart *c, const char *params, char **out);

/*
 Charts of the cyclic quotient `1/m(1,a)` as a JSON list.

 # Safety
 `out` must be a valid string slot.
 */
enum BdhStatus bdh_cyclic_charts_json(int64_t m, int64_t a, char **out);

/*
 Supported groups with `2n <= max` as a JSON list.

 # Safety
 `out` must be a valid string slot.
 */
enum BdhStatus bdh_enumerate_json(int64_t max, char **out);

#endif  /* BDHILB_H */
