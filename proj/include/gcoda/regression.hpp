// Regression reinterpretation pipeline: sum-zero constrained lasso in the
// Aitchison geometry, projection onto a learned graph geometry, the
// displayed model graph and repeated-split evaluation.
#pragma once

#include "gcoda/learn.hpp"

namespace gcoda {

struct AitchisonModel {
  Vector clr_coef;        // L_A log a; sums to zero
  double intercept = 0.0;
  double sigma2 = 0.0;    // training residual variance

  /// The coefficient composition a = exp(clr coefficients).
  Vector composition() const { return clr_coef.array().exp().matrix(); }
};

struct ZeroSumOptions {
  double tol = 1e-10;
  long max_sweeps = 50000;
};

/// Lasso regression of y on log X with the coefficients constrained to sum
/// to zero, fit by exact pairwise coordinate descent (each update moves a
/// coefficient pair in opposite directions, preserving the constraint).
/// lambda = 0 gives the constrained least squares.
AitchisonModel fit_zerosum(const Matrix& x, const Vector& y, double lambda,
                           const ZeroSumOptions& options = {});

/// b = exp(L_W^+ L_A log a): the composition whose graph-geometry predictor
/// is closest to the Aitchison one. Kernel directions receive zero.
Vector project_coefficients(const AitchisonModel& model, const Laplacian& lap);

/// <b, x>_{W,0} + intercept.
double predict(const Vector& b, const Laplacian& lap, const Vector& x,
               double intercept);

struct ModelEdge {
  int i = 0;
  int j = 0;
  double weight = 0.0;  // 2 log(b_i / b_j) w_ij, signed
  double sigma = 0.0;   // sd of log(x_i / x_j), for display scaling
};

/// Edge table of the fitted graph predictor; rows only for nonzero
/// weights, display width proportional to sigma * |weight|.
std::vector<ModelEdge> model_graph(const Vector& b, const WeightMatrix& w,
                                   const PreprocessedData& data);

struct SplitEvaluation {
  int repetitions = 0;
  double train_fraction = 0.0;
  std::vector<int> ks;
  Vector baseline_mse;  // one per repetition
  Matrix graph_mse;     // repetitions x ks
  double baseline_mean = 0.0;
  Vector graph_mean;    // per k
};

/// Repeated random splits: fit the zero-sum model on the training part,
/// project it onto the graphs of the first k learned edges and score both
/// predictors on the test part. Splits are reused across all k within a
/// repetition; repetitions run in parallel on per-repetition seed streams,
/// so the result only depends on (inputs, seed).
SplitEvaluation evaluate_splits(const Matrix& x, const Vector& y,
                                const LearnedGraph& learned,
                                const std::vector<int>& ks, int repetitions,
                                double train_fraction, double lambda,
                                std::uint64_t seed);

}  // namespace gcoda
