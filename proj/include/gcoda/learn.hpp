// Data-driven weights: stepwise log-ratio selection, lasso neighborhood
// selection, smooth-signal graph learning, preprocessing and the graph
// Gaussian density.
#pragma once

#include <string>
#include <vector>

#include "gcoda/graph.hpp"
#include "gcoda/rng.hpp"

namespace gcoda {

struct PreprocessedData {
  Matrix z;  // N x D log data, rows and columns centered
  std::vector<std::string> names;
  long zero_replacements = 0;

  int samples() const { return static_cast<int>(z.rows()); }
  int dim() const { return static_cast<int>(z.cols()); }
};

/// Replaces exact zeros by `value`; returns the count replaced. Negative
/// entries are rejected.
long zero_replace(Matrix& x, double value);

/// log-transform followed by row and column centering (iterated; row
/// centering is the clr per observation).
PreprocessedData double_center(const Matrix& x_positive,
                               std::vector<std::string> names = {});

/// Result of a sequential edge selection: edges in pick order, the
/// R-squared trace (trace[0] = 0) and the assembled weight matrix with
/// w_e = R_t - R_{t-1}.
struct LearnedGraph {
  std::vector<Edge> edges;    // selection order, weight = trace increment
  std::vector<double> trace;  // size edges + 1, nondecreasing, starts at 0
  WeightMatrix weights{WeightMatrix::zero(1)};
};

struct StepwiseOptions {
  int max_edges = -1;             // default D - 1
  double stop_r2 = 1.0 - 1e-10;  // stop once the trace reaches this
};

// Ratio columns are linearly dependent (z_i - z_k = (z_i - z_j) + (z_j - z_k)),
// so exact ties between candidate gains are structural, not accidental.
// Gains within this band of the maximum count as tied and the smallest
// (i, j) wins, which makes the selected sequence reproducible across
// implementations and thread counts.
inline constexpr double kStepwiseTieTol = 1e-10;

/// Greedy log-ratio selection: at each step pick the edge whose ratio
/// column raises the R-squared of the whole data matrix the most. An
/// orthonormal basis of the selected columns is grown incrementally so one
/// candidate costs O(N D); candidates are scanned in parallel with a
/// deterministic argmax (ties go to the lexicographically smallest edge).
LearnedGraph stepwise_select(const PreprocessedData& data,
                             const StepwiseOptions& options = {});

/// Cumulative explained-variance fractions of the principal components of
/// Z, for comparison against the stepwise trace.
Vector pca_cumulative_variance(const Matrix& z);

struct LassoOptions {
  double tol = 1e-8;
  long max_sweeps = 10000;
};

/// Raw neighborhood-selection coefficients: entry (i, j) is the lasso
/// coefficient of column j when column i is regressed on the others,
/// minimizing (1/N) ||T_i - T^-i b||^2 + lambda |b|_1. Columns run in
/// parallel.
Matrix mb_coefficients(const PreprocessedData& data, double lambda,
                       const LassoOptions& options = {});

/// Neighborhood selection post-processed into a weight matrix:
/// w_ij = |(b_ij + b_ji)/2|, zero diagonal.
WeightMatrix mb_select(const PreprocessedData& data, double lambda,
                       const LassoOptions& options = {});

/// Largest lambda with a nonzero coefficient in any column's problem.
double mb_lambda_max(const PreprocessedData& data);

struct SmoothGraphOptions {
  double objective_tol = 1e-9;  // relative objective change
  double kkt_tol = 1e-7;        // stationarity at the returned point
  long max_iterations = 200000;
};

/// Smooth-signal graph learning: minimize sum_ij v_ij w_ij
/// - alpha sum_i log(deg_i) + beta sum_ij w_ij^2 over symmetric nonnegative
/// weights with zero diagonal, by projected gradient with backtracking.
WeightMatrix smooth_graph_learn(const PreprocessedData& data, double alpha,
                                double beta,
                                const SmoothGraphOptions& options = {});

/// Mean squared log-ratios v_ij = (1/N) sum_n (z_ni - z_nj)^2.
Matrix pairwise_logratio_moments(const PreprocessedData& data);

/// Stationarity residual of the smooth-graph objective at W.
double smooth_graph_kkt_residual(const Matrix& v, const WeightMatrix& w,
                                 double alpha, double beta);

/// Log of the proper Gaussian with precision alpha I + L evaluated at
/// log x:  -(D/2) log 2pi + (1/2) log det(alpha I + L) - (1/2)||x||^2.
/// Requires alpha > 0.
double log_density(const Vector& x, const Laplacian& lap, double alpha);

/// Unnormalized log kernel for alpha = 0 (the density lives on a
/// subspace): -(1/2) ||x||^2_{W,0}.
double log_density_kernel(const Vector& x, const Laplacian& lap);

/// n samples x = exp(z), z ~ N(0, (alpha I + L)^{-1}), one per row.
Matrix sample_log_density(const Laplacian& lap, double alpha, int n, Rng& rng);

/// n samples x = exp(z) for a given symmetric PSD covariance of log x.
Matrix sample_log_gaussian(const Matrix& covariance, int n, Rng& rng);

}  // namespace gcoda
