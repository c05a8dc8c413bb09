// Serial reference implementations used by the tests and the benchmark.
// These recompute everything from scratch through an independent code path
// (explicit double sums, full least-squares refits) and exist to validate
// the optimized kernels, not to be fast.
#pragma once

#include "gcoda/learn.hpp"

namespace gcoda {
namespace reference {

/// Half the weighted double sum of pairwise differences over all ordered
/// pairs; equals f' L g.
double quadratic_form_edge_sum(const WeightMatrix& w, const Vector& f,
                               const Vector& g);

/// alpha <log x, log y> plus the halved double sum of weighted log-ratio
/// products; equals the (W, alpha) inner product with m = 1.
double inner_product_edge_sum(const Vector& x, const Vector& y,
                              const WeightMatrix& w, double alpha);

/// Stepwise log-ratio selection with a full multivariate least-squares
/// refit for every candidate at every step (no incremental state, no
/// parallelism). Same tie-breaking and skip rule as stepwise_select.
LearnedGraph stepwise_select_reference(const PreprocessedData& data,
                                       const StepwiseOptions& options = {});

/// Row-wise forward transform without OpenMP.
Matrix apply_rows_serial(const Matrix& forward, const Matrix& data);

}  // namespace reference
}  // namespace gcoda
