#ifndef BMCP_H
#define BMCP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum BmcpStatus {
  BMCP_STATUS_OK = 0,
  BMCP_STATUS_NULL_POINTER = 1,
  BMCP_STATUS_INVALID_UTF8 = 2,
  BMCP_STATUS_PARSE = 3,
  BMCP_STATUS_IO = 4,
  BMCP_STATUS_CONFIG = 5,
  BMCP_STATUS_INFEASIBLE = 6,
  BMCP_STATUS_INVALID_INPUT = 7,
  BMCP_STATUS_PANIC = 8,
} BmcpStatus;

// Opaque problem instance.
typedef struct BmcpInstance BmcpInstance;

// Opaque outcome of one solver run.
typedef struct BmcpRunResult BmcpRunResult;

// Solver settings. Obtain defaults from [`bmcp_solver_config_default`].
typedef struct BmcpSolverConfig {
  // Wall-clock budget in seconds; ignored when `rounds` is nonzero.
  double time_limit_seconds;
  // Number of tabu phases; 0 selects the time budget.
  uint64_t rounds;
  double reward_factor;
  double penalty_factor;
  // 0 keeps the default depth rule.
  uint64_t depth;
  // 0 keeps the default tenure rule.
  uint64_t tenure;
  // Use the random perturbation instead of the learned one.
  bool random_perturbation;
  bool carry_probability;
  uint64_t seed;
} BmcpSolverConfig;

typedef struct BmcpWilcoxon {
  double w_plus;
  size_t n;
  double p_value;
  bool exact;
} BmcpWilcoxon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *bmcp_last_error(void);

// Parses the text instance format.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum BmcpStatus bmcp_instance_parse(const char *text, struct BmcpInstance **out);

// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum BmcpStatus bmcp_instance_load(const char *path, struct BmcpInstance **out);

// Random instance with weights and profits uniform in `[1, 100]`.
//
// # Safety
// `out` must be writable.
enum BmcpStatus bmcp_instance_generate(size_t item_count,
                                       size_t element_count,
                                       double density,
                                       uint64_t capacity,
                                       uint64_t seed,
                                       struct BmcpInstance **out);

// # Safety
// `inst` must be null or come from this library and not be freed yet.
void bmcp_instance_free(struct BmcpInstance *inst);

// Returns 0 for a null instance.
//
// # Safety
// `inst` must be null or a live instance.
size_t bmcp_instance_item_count(const struct BmcpInstance *inst);

// # Safety
// `inst` must be null or a live instance.
size_t bmcp_instance_element_count(const struct BmcpInstance *inst);

// # Safety
// `inst` must be null or a live instance.
uint64_t bmcp_instance_capacity(const struct BmcpInstance *inst);

// Canonical text form. Release with [`bmcp_string_free`].
//
// # Safety
// `inst` must be a live instance; `out` must be writable.
enum BmcpStatus bmcp_instance_to_string(const struct BmcpInstance *inst, char **out);

// LP model text. Release with [`bmcp_string_free`].
//
// # Safety
// `inst` must be a live instance; `out` must be writable.
enum BmcpStatus bmcp_export_lp(const struct BmcpInstance *inst, char **out);

// # Safety
// `s` must be null or a string returned by this library.
void bmcp_string_free(char *s);

struct BmcpSolverConfig bmcp_solver_config_default(void);

// One solver run. A null `config` uses the defaults (600 s budget).
//
// # Safety
// `inst` must be a live instance, `config` null or valid, `out` writable.
enum BmcpStatus bmcp_solve(const struct BmcpInstance *inst,
                           const struct BmcpSolverConfig *config,
                           struct BmcpRunResult **out);

// # Safety
// `r` must be null or a live result.
void bmcp_run_result_free(struct BmcpRunResult *r);

// # Safety
// `r` must be null or a live result.
uint64_t bmcp_run_result_objective(const struct BmcpRunResult *r);

// # Safety
// `r` must be null or a live result.
uint64_t bmcp_run_result_weight(const struct BmcpRunResult *r);

// # Safety
// `r` must be null or a live result.
uint64_t bmcp_run_result_rounds(const struct BmcpRunResult *r);

// # Safety
// `r` must be null or a live result.
double bmcp_run_result_time_to_best(const struct BmcpRunResult *r);

// # Safety
// `r` must be null or a live result.
size_t bmcp_run_result_selected_count(const struct BmcpRunResult *r);

// Copies the selected items, ascending, into `buf`. Fails with
// `InvalidInput` when `len` is smaller than the selected count.
//
// # Safety
// `r` must be a live result; `buf` must hold `len` writable elements.
enum BmcpStatus bmcp_run_result_selected_items(const struct BmcpRunResult *r,
                                               size_t *buf,
                                               size_t len);

// Proven optimum by exhaustive enumeration (small instances only).
//
// # Safety
// `inst` must be a live instance; `objective` must be writable.
enum BmcpStatus bmcp_exact_optimum(const struct BmcpInstance *inst, uint64_t *objective);

// Two-sided Wilcoxon signed-rank test on `len` pairs `(a[i], b[i])`.
//
// # Safety
// `a` and `b` must hold `len` readable values; `out` must be writable.
enum BmcpStatus bmcp_wilcoxon(const double *a,
                              const double *b,
                              size_t len,
                              struct BmcpWilcoxon *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BMCP_H */
