#include "gcoda/learn.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "gcoda/geometry.hpp"

namespace gcoda {

long zero_replace(Matrix& x, double value) {
  if (!(value > 0.0)) {
    throw ValidationError("zero replacement value must be positive");
  }
  long count = 0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      const double v = x(r, c);
      if (v == 0.0) {
        x(r, c) = value;
        ++count;
      } else if (!(v > 0.0)) {
        throw ValidationError("data matrix has a negative or non-finite "
                              "entry at row " + std::to_string(r + 1) +
                              ", column " + std::to_string(c + 1));
      }
    }
  }
  return count;
}

PreprocessedData double_center(const Matrix& x_positive,
                               std::vector<std::string> names) {
  PreprocessedData out;
  out.z = Matrix(x_positive.rows(), x_positive.cols());
  for (Eigen::Index r = 0; r < x_positive.rows(); ++r) {
    for (Eigen::Index c = 0; c < x_positive.cols(); ++c) {
      const double v = x_positive(r, c);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError("double centering needs strictly positive "
                              "entries; offending row " +
                              std::to_string(r + 1) + ", column " +
                              std::to_string(c + 1));
      }
      out.z(r, c) = std::log(v);
    }
  }
  // Row centering is the clr per observation; one row+column pass centers
  // both exactly, the second pass only mops up rounding.
  for (int pass = 0; pass < 2; ++pass) {
    out.z.colwise() -= out.z.rowwise().mean();
    out.z.rowwise() -= out.z.colwise().mean();
  }
  if (names.empty()) {
    for (Eigen::Index c = 0; c < x_positive.cols(); ++c) {
      names.push_back("v" + std::to_string(c + 1));
    }
  }
  out.names = std::move(names);
  return out;
}

LearnedGraph stepwise_select(const PreprocessedData& data,
                             const StepwiseOptions& options) {
  const int n = data.samples();
  const int d = data.dim();
  if (n < 2 || d < 2) {
    throw ValidationError("stepwise selection needs at least 2 samples and "
                          "2 variables");
  }
  const double total = data.z.squaredNorm();
  if (total <= 1e-24) {
    throw ValidationError("stepwise selection: data matrix has zero total "
                          "variance");
  }
  const int all_pairs = d * (d - 1) / 2;
  int max_edges = options.max_edges < 0 ? d - 1 : options.max_edges;
  if (max_edges > all_pairs) {
    throw ValidationError("stepwise selection: maxEdges exceeds the number "
                          "of candidate edges");
  }

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(all_pairs));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  }
  std::vector<char> taken(pairs.size(), 0);

  Matrix q(n, max_edges);       // orthonormal basis of selected ratio columns
  Matrix qtz(max_edges, d);     // q' Z, grown one row per step
  std::vector<double> gains(pairs.size());
  LearnedGraph out;
  out.trace.push_back(0.0);
  double explained = 0.0;

  for (int step = 0; step < max_edges; ++step) {
    if (out.trace.back() >= options.stop_r2) break;
    const int t = step;
#pragma omp parallel
    {
      Vector u(n);
#pragma omp for schedule(static)
      for (int p = 0; p < all_pairs; ++p) {
        gains[static_cast<std::size_t>(p)] = -1.0;
        if (taken[static_cast<std::size_t>(p)]) continue;
        const auto [ci, cj] = pairs[static_cast<std::size_t>(p)];
        u = data.z.col(ci) - data.z.col(cj);
        const double cnorm = u.norm();
        if (cnorm == 0.0) continue;
        if (t > 0) {
          // q' c read off q' Z, O(t); re-orthogonalization O(n t)
          u.noalias() -=
              q.leftCols(t) * (qtz.topRows(t).col(ci) - qtz.topRows(t).col(cj));
        }
        const double unorm = u.norm();
        if (unorm < 1e-10 * cnorm) continue;  // adds nothing new
        gains[static_cast<std::size_t>(p)] =
            (data.z.transpose() * u).squaredNorm() / (unorm * unorm) / total;
      }
    }
    // tie-aware argmax: best gain first, then the smallest edge within the
    // tie band (pairs are lexicographically ordered)
    double top = -1.0;
    for (const double g : gains) top = std::max(top, g);
    if (top < 0.0) break;  // every remaining candidate is dependent
    int pick = -1;
    for (std::size_t p = 0; p < gains.size(); ++p) {
      if (gains[p] >= 0.0 && gains[p] >= top - kStepwiseTieTol) {
        pick = static_cast<int>(p);
        break;
      }
    }
    const auto [bi, bj] = pairs[static_cast<std::size_t>(pick)];

    // Rebuild the winning direction with the same arithmetic as the scan.
    Vector u = data.z.col(bi) - data.z.col(bj);
    if (t > 0) {
      u.noalias() -=
          q.leftCols(t) * (qtz.topRows(t).col(bi) - qtz.topRows(t).col(bj));
    }
    u /= u.norm();
    q.col(t) = u;
    qtz.row(t) = u.transpose() * data.z;
    explained += std::max(gains[static_cast<std::size_t>(pick)], 0.0) * total;

    const double prev = out.trace.back();
    const double r2 = std::min(1.0, std::max(prev, explained / total));
    out.trace.push_back(r2);
    out.edges.push_back({bi, bj, r2 - prev});
    taken[static_cast<std::size_t>(pick)] = 1;
  }

  out.weights = WeightMatrix::from_edges(d, out.edges);
  return out;
}

Vector pca_cumulative_variance(const Matrix& z) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(z.transpose() * z);
  if (solver.info() != Eigen::Success) {
    throw NumericError("PCA eigendecomposition failed");
  }
  const Eigen::Index d = z.cols();
  const double total = solver.eigenvalues().cwiseMax(0.0).sum();
  if (total <= 0.0) {
    throw ValidationError("PCA: data matrix has zero total variance");
  }
  Vector cum(d);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    acc += std::max(solver.eigenvalues()[d - 1 - k], 0.0);
    cum[k] = std::min(1.0, acc / total);
  }
  return cum;
}

namespace {

// One lasso problem (1/N)||y - X b||^2 + lambda |b|_1 by cyclic coordinate
// descent on a maintained residual.
Vector lasso_cd(const Matrix& x, const Vector& y, double lambda,
                const LassoOptions& options) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  Vector beta = Vector::Zero(p);
  Vector resid = y;
  Vector colsq(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    colsq[j] = 2.0 * x.col(j).squaredNorm() / static_cast<double>(n);
  }
  const double grad_scale =
      std::max(1.0, (2.0 / static_cast<double>(n)) *
                        (x.transpose() * y).cwiseAbs().maxCoeff());

  for (long sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (colsq[j] <= 1e-300) continue;
      const double rho = (2.0 / static_cast<double>(n)) * x.col(j).dot(resid) +
                         colsq[j] * beta[j];
      double next = 0.0;
      if (rho > lambda) {
        next = (rho - lambda) / colsq[j];
      } else if (rho < -lambda) {
        next = (rho + lambda) / colsq[j];
      }
      const double delta = next - beta[j];
      if (delta != 0.0) {
        resid.noalias() -= delta * x.col(j);
        beta[j] = next;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    if (max_change <= options.tol * std::max(1.0, beta.cwiseAbs().maxCoeff())) {
      // Accept only at a point whose stationarity matches the tolerance.
      double kkt = 0.0;
      for (Eigen::Index j = 0; j < p; ++j) {
        const double g =
            -(2.0 / static_cast<double>(n)) * x.col(j).dot(resid);
        if (beta[j] > 0.0) {
          kkt = std::max(kkt, std::abs(g + lambda));
        } else if (beta[j] < 0.0) {
          kkt = std::max(kkt, std::abs(g - lambda));
        } else {
          kkt = std::max(kkt, std::max(0.0, std::abs(g) - lambda));
        }
      }
      // an order below the sweep tolerance so the coefficients themselves
      // land within tol of the optimum on well-conditioned problems
      if (kkt <= 0.01 * options.tol * grad_scale) break;
    }
  }
  return beta;
}

}  // namespace

Matrix mb_coefficients(const PreprocessedData& data, double lambda,
                       const LassoOptions& options) {
  if (lambda < 0.0) {
    throw ValidationError("neighborhood selection: lambda must be >= 0");
  }
  const int d = data.dim();
  const int n = data.samples();
  Matrix beta = Matrix::Zero(d, d);  // beta(i, j): coefficient of j in fit of i
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < d; ++i) {
    Matrix x(n, d - 1);
    for (int j = 0, c = 0; j < d; ++j) {
      if (j == i) continue;
      x.col(c++) = data.z.col(j);
    }
    const Vector b = lasso_cd(x, data.z.col(i), lambda, options);
    for (int j = 0, c = 0; j < d; ++j) {
      if (j == i) continue;
      beta(i, j) = b[c++];
    }
  }
  return beta;
}

WeightMatrix mb_select(const PreprocessedData& data, double lambda,
                       const LassoOptions& options) {
  const Matrix beta = mb_coefficients(data, lambda, options);
  Matrix w = (0.5 * (beta + beta.transpose())).cwiseAbs();
  w.diagonal().setZero();
  return WeightMatrix(std::move(w));
}

double mb_lambda_max(const PreprocessedData& data) {
  const int d = data.dim();
  const double n = static_cast<double>(data.samples());
  double lmax = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      lmax = std::max(lmax,
                      std::abs(2.0 * data.z.col(j).dot(data.z.col(i)) / n));
    }
  }
  return lmax;
}

Matrix pairwise_logratio_moments(const PreprocessedData& data) {
  const int d = data.dim();
  const double n = static_cast<double>(data.samples());
  Matrix v = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      v(i, j) = v(j, i) =
          (data.z.col(i) - data.z.col(j)).squaredNorm() / n;
    }
  }
  return v;
}

namespace {

double smooth_objective(const Matrix& v, const Matrix& w, double alpha,
                        double beta) {
  const Vector deg = w.rowwise().sum();
  if ((deg.array() <= 0.0).any()) {
    return std::numeric_limits<double>::infinity();
  }
  return v.cwiseProduct(w).sum() - alpha * deg.array().log().sum() +
         beta * w.squaredNorm();
}

Matrix smooth_gradient(const Matrix& v, const Matrix& w, double alpha,
                       double beta) {
  const Vector deg = w.rowwise().sum();
  const int d = static_cast<int>(w.rows());
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g(i, j) = i == j ? 0.0
                       : 2.0 * v(i, j) - alpha * (1.0 / deg[i] + 1.0 / deg[j]) +
                             4.0 * beta * w(i, j);
    }
  }
  return g;
}

}  // namespace

double smooth_graph_kkt_residual(const Matrix& v, const WeightMatrix& w,
                                 double alpha, double beta) {
  const Matrix g = smooth_gradient(v, w.matrix(), alpha, beta);
  double res = 0.0;
  for (int i = 0; i < w.dim(); ++i) {
    for (int j = i + 1; j < w.dim(); ++j) {
      if (w(i, j) > 0.0) {
        res = std::max(res, std::abs(g(i, j)));
      } else {
        res = std::max(res, std::max(0.0, -g(i, j)));
      }
    }
  }
  return res;
}

WeightMatrix smooth_graph_learn(const PreprocessedData& data, double alpha,
                                double beta,
                                const SmoothGraphOptions& options) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw ValidationError("smooth graph learning: alpha and beta must be "
                          "positive");
  }
  const int d = data.dim();
  if (d < 2) {
    throw ValidationError("smooth graph learning needs at least 2 variables");
  }
  const Matrix v = pairwise_logratio_moments(data);

  Matrix w = Matrix::Constant(d, d, 1.0 / d);
  w.diagonal().setZero();
  double f = smooth_objective(v, w, alpha, beta);
  double step = 1.0;

  for (long it = 0; it < options.max_iterations; ++it) {
    const Matrix g = smooth_gradient(v, w, alpha, beta);
    // projected gradient with backtracking onto {w >= 0, symmetric, 0 diag}
    Matrix next;
    double f_next = std::numeric_limits<double>::infinity();
    step *= 1.3;
    while (true) {
      next = (w - step * g).cwiseMax(0.0);
      next.diagonal().setZero();
      f_next = smooth_objective(v, next, alpha, beta);
      const double decrease = (next - w).squaredNorm() / (2.0 * step);
      if (std::isfinite(f_next) && f_next <= f - 1e-4 * decrease) break;
      step *= 0.5;
      if (step < 1e-18) break;
    }
    if (!std::isfinite(f_next) || f_next > f) {
      // stalled line search; report stationarity as it stands
      WeightMatrix cur(w);
      if (smooth_graph_kkt_residual(v, cur, alpha, beta) <= options.kkt_tol) {
        return cur;
      }
      throw NumericError("smooth graph learning stalled; last objective " +
                         std::to_string(f));
    }
    const double rel = std::abs(f - f_next) / std::max(1.0, std::abs(f));
    w = next;
    f = f_next;
    if (rel < options.objective_tol) {
      WeightMatrix cur(w);
      if (smooth_graph_kkt_residual(v, cur, alpha, beta) <= options.kkt_tol) {
        return cur;
      }
    }
  }
  throw NumericError(
      "smooth graph learning did not converge; last objective " +
      std::to_string(f));
}

double log_density(const Vector& x, const Laplacian& lap, double alpha) {
  if (!(alpha > 0.0)) {
    throw ValidationError("log density: alpha must be positive (the "
                          "alpha = 0 case only has a subspace kernel; use "
                          "log_density_kernel)");
  }
  require_positive(x, "log density");
  if (x.size() != lap.dim()) {
    throw ValidationError("log density: dimension mismatch");
  }
  const Vector lx = x.array().log().matrix();
  const double quad =
      alpha * lx.squaredNorm() + lx.dot(lap.matrix() * lx);
  double logdet = 0.0;
  for (int i = 0; i < lap.dim(); ++i) {
    logdet += std::log(lap.eigenvalues()[i] + alpha);
  }
  constexpr double log2pi = 1.8378770664093454835606594728112;
  return -0.5 * lap.dim() * log2pi + 0.5 * logdet - 0.5 * quad;
}

double log_density_kernel(const Vector& x, const Laplacian& lap) {
  require_positive(x, "log density kernel");
  const Vector lx = x.array().log().matrix();
  return -0.5 * lx.dot(lap.matrix() * lx);
}

Matrix sample_log_density(const Laplacian& lap, double alpha, int n,
                          Rng& rng) {
  if (!(alpha > 0.0)) {
    throw ValidationError("sampling requires alpha > 0");
  }
  Matrix precision = lap.matrix();
  precision.diagonal().array() += alpha;
  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw NumericError("sampling: Cholesky of the precision failed");
  }
  const int d = lap.dim();
  Matrix out(n, d);
  Vector xi(d);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < d; ++c) xi[c] = rng.normal();
    // z = U^{-1} xi has covariance (U' U)^{-1} = precision^{-1}
    const Vector z = llt.matrixU().solve(xi);
    out.row(r) = z.array().exp().matrix().transpose();
  }
  return out;
}

Matrix sample_log_gaussian(const Matrix& covariance, int n, Rng& rng) {
  if (covariance.rows() != covariance.cols()) {
    throw ValidationError("sampling: covariance must be square");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(covariance);
  if (solver.info() != Eigen::Success) {
    throw NumericError("sampling: covariance eigendecomposition failed");
  }
  const int d = static_cast<int>(covariance.rows());
  const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  if (solver.eigenvalues()[0] < -kZeroEigTol * scale) {
    throw ValidationError("sampling: covariance is not positive "
                          "semi-definite");
  }
  const Matrix factor = solver.eigenvectors() *
                        solver.eigenvalues().cwiseMax(0.0).cwiseSqrt()
                            .asDiagonal();
  Matrix out(n, d);
  Vector xi(d);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < d; ++c) xi[c] = rng.normal();
    out.row(r) = (factor * xi).array().exp().matrix().transpose();
  }
  return out;
}

}  // namespace gcoda
