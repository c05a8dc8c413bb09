#include "gcoda/regression.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gcoda {

namespace {

Matrix log_matrix(const Matrix& x, const char* what) {
  Matrix lx(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (!(x(r, c) > 0.0) || !std::isfinite(x(r, c))) {
        throw ValidationError(std::string(what) +
                              ": nonpositive entry at row " +
                              std::to_string(r + 1) + ", column " +
                              std::to_string(c + 1));
      }
      lx(r, c) = std::log(x(r, c));
    }
  }
  return lx;
}

// Objective change of moving (beta_j, beta_k) by (+delta, -delta):
// (1/N)(s delta^2 - 2 c delta) + lambda (|bj+delta| - |bj| + |bk-delta| - |bk|).
double pair_move_cost(double delta, double c, double s, double n,
                      double lambda, double bj, double bk) {
  return (s * delta * delta - 2.0 * c * delta) / n +
         lambda * (std::abs(bj + delta) - std::abs(bj) +
                   std::abs(bk - delta) - std::abs(bk));
}

}  // namespace

AitchisonModel fit_zerosum(const Matrix& x, const Vector& y, double lambda,
                           const ZeroSumOptions& options) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 2 || d < 2) {
    throw ValidationError("zero-sum fit needs at least 2 samples and 2 "
                          "variables");
  }
  if (y.size() != n) {
    throw ValidationError("zero-sum fit: response length does not match the "
                          "data rows");
  }
  if (lambda < 0.0) {
    throw ValidationError("zero-sum fit: lambda must be >= 0");
  }
  const Matrix logx = log_matrix(x, "zero-sum fit");
  const Vector col_mean = logx.colwise().mean();
  const Matrix u = logx.rowwise() - col_mean.transpose();
  const double y_mean = y.mean();
  const Vector yc = y.array() - y_mean;

  const Matrix gram = u.transpose() * u;
  Vector beta = Vector::Zero(d);
  Vector corr = u.transpose() * yc;  // maintained as U'(yc - U beta)
  const double nn = static_cast<double>(n);

  for (long sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double max_move = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = j + 1; k < d; ++k) {
        const double s = gram(j, j) + gram(k, k) - 2.0 * gram(j, k);
        if (s <= 1e-300) continue;
        const double c = corr[j] - corr[k];
        double delta = 0.0;
        if (lambda == 0.0) {
          delta = c / s;
        } else {
          // exact minimizer of the piecewise quadratic: try the interior
          // optimum of each sign region plus the two kinks
          double best_cost = 0.0;
          const double half_nl = 0.5 * nn * lambda;
          for (const double sign_pair : {0.0, 2.0, -2.0}) {
            const double cand = (c - half_nl * sign_pair) / s;
            const double cost =
                pair_move_cost(cand, c, s, nn, lambda, beta[j], beta[k]);
            if (cost < best_cost) {
              best_cost = cost;
              delta = cand;
            }
          }
          for (const double cand : {-beta[j], beta[k]}) {
            const double cost =
                pair_move_cost(cand, c, s, nn, lambda, beta[j], beta[k]);
            if (cost < best_cost) {
              best_cost = cost;
              delta = cand;
            }
          }
        }
        if (delta != 0.0) {
          beta[j] += delta;
          beta[k] -= delta;
          corr.noalias() -= delta * (gram.col(j) - gram.col(k));
          max_move = std::max(max_move, std::abs(delta));
        }
      }
    }
    if (max_move <= options.tol * std::max(1.0, beta.cwiseAbs().maxCoeff())) {
      break;
    }
  }

  AitchisonModel model;
  model.clr_coef = beta;
  model.intercept = y_mean - beta.dot(col_mean);
  model.sigma2 = (yc - u * beta).squaredNorm() / nn;
  return model;
}

Vector project_coefficients(const AitchisonModel& model, const Laplacian& lap) {
  if (model.clr_coef.size() != lap.dim()) {
    throw ValidationError("projection: coefficient dimension mismatch");
  }
  const Vector logb = lap.pseudo_inverse() * model.clr_coef;
  return logb.array().exp().matrix();
}

double predict(const Vector& b, const Laplacian& lap, const Vector& x,
               double intercept) {
  require_positive(x, "predict");
  require_positive(b, "predict");
  if (b.size() != lap.dim() || x.size() != lap.dim()) {
    throw ValidationError("predict: dimension mismatch");
  }
  const Vector logb = b.array().log().matrix();
  const Vector logx = x.array().log().matrix();
  return logb.dot(lap.matrix() * logx) + intercept;
}

std::vector<ModelEdge> model_graph(const Vector& b, const WeightMatrix& w,
                                   const PreprocessedData& data) {
  require_positive(b, "model graph");
  if (b.size() != w.dim() || data.dim() != w.dim()) {
    throw ValidationError("model graph: dimension mismatch");
  }
  const double n = static_cast<double>(data.samples());
  std::vector<ModelEdge> edges;
  for (int i = 0; i < w.dim(); ++i) {
    for (int j = i + 1; j < w.dim(); ++j) {
      if (w(i, j) == 0.0) continue;
      const double wt = 2.0 * std::log(b[i] / b[j]) * w(i, j);
      if (wt == 0.0) continue;
      const Vector ratio = data.z.col(i) - data.z.col(j);
      const double centered_sq =
          (ratio.array() - ratio.mean()).square().sum();
      const double sigma = n > 1.0 ? std::sqrt(centered_sq / (n - 1.0)) : 0.0;
      edges.push_back({i, j, wt, sigma});
    }
  }
  return edges;
}

SplitEvaluation evaluate_splits(const Matrix& x, const Vector& y,
                                const LearnedGraph& learned,
                                const std::vector<int>& ks, int repetitions,
                                double train_fraction, double lambda,
                                std::uint64_t seed) {
  const int n = static_cast<int>(x.rows());
  if (y.size() != n) {
    throw ValidationError("evaluation: response length does not match data");
  }
  if (repetitions < 1) {
    throw ValidationError("evaluation: repetitions must be >= 1");
  }
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
    throw ValidationError("evaluation: train fraction must be in (0, 1)");
  }
  if (ks.empty()) {
    throw ValidationError("evaluation: need at least one k");
  }
  const int n_train = static_cast<int>(train_fraction * n);
  if (n_train < 2 || n - n_train < 1) {
    throw ValidationError("evaluation: split leaves an empty train or test "
                          "set");
  }
  const int total_edges = static_cast<int>(learned.edges.size());
  for (int k : ks) {
    if (k < 1 || k > total_edges) {
      throw ValidationError("evaluation: k = " + std::to_string(k) +
                            " is outside 1.." + std::to_string(total_edges));
    }
  }

  // one Laplacian per requested k, shared read-only by all repetitions
  std::vector<Laplacian> laps;
  laps.reserve(ks.size());
  for (int k : ks) {
    std::vector<Edge> sub(learned.edges.begin(), learned.edges.begin() + k);
    laps.emplace_back(WeightMatrix::from_edges(static_cast<int>(x.cols()),
                                               sub));
  }

  SplitEvaluation eval;
  eval.repetitions = repetitions;
  eval.train_fraction = train_fraction;
  eval.ks = ks;
  eval.baseline_mse = Vector::Zero(repetitions);
  eval.graph_mse = Matrix::Zero(repetitions, static_cast<Eigen::Index>(ks.size()));

#pragma omp parallel for schedule(dynamic)
  for (int rep = 0; rep < repetitions; ++rep) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(rep));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    Matrix x_train(n_train, x.cols());
    Vector y_train(n_train);
    for (int r = 0; r < n_train; ++r) {
      x_train.row(r) = x.row(order[static_cast<std::size_t>(r)]);
      y_train[r] = y[order[static_cast<std::size_t>(r)]];
    }
    const AitchisonModel fit = fit_zerosum(x_train, y_train, lambda);

    const int n_test = n - n_train;
    double base_err = 0.0;
    std::vector<double> graph_err(ks.size(), 0.0);
    std::vector<Vector> projected;
    projected.reserve(ks.size());
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      projected.push_back(project_coefficients(fit, laps[ki]));
    }
    for (int r = n_train; r < n; ++r) {
      const Vector xi = x.row(order[static_cast<std::size_t>(r)]).transpose();
      const double yi = y[order[static_cast<std::size_t>(r)]];
      const Vector logxi = xi.array().log().matrix();
      const double base_pred = fit.clr_coef.dot(logxi) + fit.intercept;
      base_err += (yi - base_pred) * (yi - base_pred);
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        const double pred = predict(projected[ki], laps[ki], xi,
                                    fit.intercept);
        graph_err[ki] += (yi - pred) * (yi - pred);
      }
    }
    eval.baseline_mse[rep] = base_err / n_test;
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      eval.graph_mse(rep, static_cast<Eigen::Index>(ki)) =
          graph_err[ki] / n_test;
    }
  }

  eval.baseline_mean = eval.baseline_mse.mean();
  eval.graph_mean = eval.graph_mse.colwise().mean();
  return eval;
}

}  // namespace gcoda
