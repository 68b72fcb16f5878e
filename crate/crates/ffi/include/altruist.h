#ifndef ALTRUIST_H
#define ALTRUIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum AltStatus {
  ALT_STATUS_OK = 0,
  ALT_STATUS_NULL_POINTER = 1,
  ALT_STATUS_INVALID_ARGUMENT = 2,
  ALT_STATUS_DIMENSION_MISMATCH = 3,
  ALT_STATUS_NOT_SYMMETRIC = 4,
  ALT_STATUS_NOT_POSITIVE_DEFINITE = 5,
  ALT_STATUS_NON_FINITE = 6,
  ALT_STATUS_NOT_CONVERGED = 7,
  ALT_STATUS_DEGENERATE_PAIR = 8,
  ALT_STATUS_TOO_FEW_SAMPLES = 9,
  ALT_STATUS_BRACKET_FAILURE = 10,
  ALT_STATUS_LLOYD_FAILED = 11,
  ALT_STATUS_BUFFER_TOO_SMALL = 12,
  ALT_STATUS_PANIC = 13,
  ALT_STATUS_INTERNAL = 14,
} AltStatus;

typedef enum AltBranch {
  ALT_BRANCH_PLUS = 0,
  ALT_BRANCH_MINUS = 1,
} AltBranch;

typedef enum AltCostKind {
  ALT_COST_KIND_HETERARCHICAL = 0,
  ALT_COST_KIND_HIERARCHICAL = 1,
} AltCostKind;

// Opaque Gaussian belief `N(mean, cov)`.
typedef struct AltBelief AltBelief;

// Opaque sample set.
typedef struct AltSamples AltSamples;

typedef struct AltConstants {
  double root;
  double w_hi;
  double c_hi;
  double c_ht;
} AltConstants;

typedef struct AltCostReport {
  double j_ms;
  double j_value;
  double upsilon;
} AltCostReport;

typedef struct AltBounds {
  double ht_lower;
  double ht_upper;
  double hi_lower;
  double hi_upper;
} AltBounds;

typedef struct AltMcEstimate {
  double mean;
  double stderr;
} AltMcEstimate;

typedef struct AltLloydConfig {
  size_t max_iters;
  double move_tol;
  size_t restarts;
  uint64_t seed;
} AltLloydConfig;

typedef struct AltLloydSummary {
  size_t iterations;
  bool converged;
  size_t restart_index;
  double mc_cost;
  double mc_stderr;
} AltLloydSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len` bytes). Returns the full message length excluding
// the terminator, or 0 if there is none.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t alt_last_error_message(char *buf, size_t len);

// # Safety
// `out` must be null or valid for writes.
enum AltStatus alt_constants(struct AltConstants *out);

double alt_std_cdf(double x);

double alt_mills_ratio(double x);

// Creates a belief from a `dim` mean and a row-major `dim × dim` covariance.
//
// # Safety
// `mean` must hold `dim` doubles, `cov` `dim * dim`; `out` must be valid for writes.
enum AltStatus alt_belief_new(size_t dim,
                              const double *mean,
                              const double *cov,
                              struct AltBelief **out);

// # Safety
// `belief` must be null or a handle from [`alt_belief_new`] not yet freed.
void alt_belief_free(struct AltBelief *belief);

// Dimension of the belief, or 0 for a null handle.
//
// # Safety
// `belief` must be null or a live handle.
size_t alt_belief_dim(const struct AltBelief *belief);

// Leading eigenvalue and unit eigenvector of the belief covariance.
//
// # Safety
// `vector` must hold `dim` doubles; the other pointers must be valid.
enum AltStatus alt_belief_leading_eigenpair(const struct AltBelief *belief,
                                            double *value,
                                            double *vector);

// Closed-form heterarchical pair.
//
// # Safety
// `first` and `second` must each hold `dim` doubles.
enum AltStatus alt_heterarchical_pair(const struct AltBelief *belief,
                                      double *first,
                                      double *second);

// Closed-form hierarchical pair; `first` receives the belief mean.
//
// # Safety
// `first` and `second` must each hold `dim` doubles.
enum AltStatus alt_hierarchical_pair(const struct AltBelief *belief,
                                     enum AltBranch branch,
                                     double *first,
                                     double *second);

// # Safety
// `belief` must be a live handle; `out` valid for writes.
enum AltStatus alt_analytic_cost(const struct AltBelief *belief,
                                 enum AltCostKind kind,
                                 struct AltCostReport *out);

// # Safety
// `out` must be valid for writes.
enum AltStatus alt_reduction_bounds(size_t dim, struct AltBounds *out);

// Wraps `count` row-major points of dimension `dim` (copied).
//
// # Safety
// `points` must hold `count * dim` doubles; `out` valid for writes.
enum AltStatus alt_samples_new(size_t dim,
                               size_t count,
                               const double *points,
                               struct AltSamples **out);

// Draws `count` seeded samples from the belief.
//
// # Safety
// `belief` must be a live handle; `out` valid for writes.
enum AltStatus alt_sample_gaussian(const struct AltBelief *belief,
                                   size_t count,
                                   uint64_t seed,
                                   struct AltSamples **out);

// Draws `count` seeded samples from a scalar Gaussian mixture of
// `components` terms.
//
// # Safety
// `weights`, `means` and `variances` must each hold `components` doubles.
enum AltStatus alt_sample_mixture(size_t components,
                                  const double *weights,
                                  const double *means,
                                  const double *variances,
                                  size_t count,
                                  uint64_t seed,
                                  struct AltSamples **out);

// # Safety
// `samples` must be null or a live handle.
void alt_samples_free(struct AltSamples *samples);

// Number of points, or 0 for a null handle.
//
// # Safety
// `samples` must be null or a live handle.
size_t alt_samples_len(const struct AltSamples *samples);

// Point dimension, or 0 for a null handle.
//
// # Safety
// `samples` must be null or a live handle.
size_t alt_samples_dim(const struct AltSamples *samples);

// Copies the row-major points into `buf`, which holds `len` doubles.
//
// # Safety
// `buf` must hold `len` doubles.
enum AltStatus alt_samples_copy(const struct AltSamples *samples, double *buf, size_t len);

// Monte Carlo pair cost over the sample set. Coincident points are allowed.
//
// # Safety
// `first` and `second` must hold `dim` doubles; `out` valid for writes.
enum AltStatus alt_mc_cost(const struct AltSamples *samples,
                           const double *first,
                           const double *second,
                           struct AltMcEstimate *out);

struct AltLloydConfig alt_lloyd_config_default(void);

// Multi-start Lloyd iteration. `config` may be null for the defaults.
//
// # Safety
// `first` and `second` must hold `dim` doubles; `summary` valid for writes.
enum AltStatus alt_lloyd(const struct AltSamples *samples,
                         enum AltCostKind kind,
                         const struct AltLloydConfig *config,
                         struct AltLloydSummary *summary,
                         double *first,
                         double *second);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALTRUIST_H */
