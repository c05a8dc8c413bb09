#include "gcoda/reference.hpp"

#include <cmath>

namespace gcoda {
namespace reference {

double quadratic_form_edge_sum(const WeightMatrix& w, const Vector& f,
                               const Vector& g) {
  const int d = w.dim();
  double acc = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      acc += (f[i] - f[j]) * (g[i] - g[j]) * w(i, j);
    }
  }
  return 0.5 * acc;
}

double inner_product_edge_sum(const Vector& x, const Vector& y,
                              const WeightMatrix& w, double alpha) {
  const Vector lx = x.array().log().matrix();
  const Vector ly = y.array().log().matrix();
  return alpha * lx.dot(ly) + quadratic_form_edge_sum(w, lx, ly);
}

LearnedGraph stepwise_select_reference(const PreprocessedData& data,
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

  std::vector<std::pair<int, int>> selected;
  LearnedGraph out;
  out.trace.push_back(0.0);

  Matrix design(n, max_edges + 1);
  while (static_cast<int>(selected.size()) < max_edges &&
         out.trace.back() < options.stop_r2) {
    const int t = static_cast<int>(selected.size());
    for (int s = 0; s < t; ++s) {
      design.col(s) =
          data.z.col(selected[static_cast<std::size_t>(s)].first) -
          data.z.col(selected[static_cast<std::size_t>(s)].second);
    }
    std::vector<double> r2s;
    std::vector<std::pair<int, int>> cand_edges;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        bool used = false;
        for (const auto& e : selected) {
          if (e.first == i && e.second == j) used = true;
        }
        if (used) continue;
        const Vector cand = data.z.col(i) - data.z.col(j);
        const double cnorm = cand.norm();
        if (cnorm == 0.0) continue;
        if (t > 0) {
          Eigen::HouseholderQR<Matrix> qr_sel(design.leftCols(t));
          const Vector resid =
              cand - design.leftCols(t) * qr_sel.solve(cand);
          if (resid.norm() < 1e-10 * cnorm) continue;
        }
        design.col(t) = cand;
        Eigen::HouseholderQR<Matrix> qr(design.leftCols(t + 1));
        const Matrix coef = qr.solve(data.z);
        const double rss =
            (data.z - design.leftCols(t + 1) * coef).squaredNorm();
        r2s.push_back(1.0 - rss / total);
        cand_edges.emplace_back(i, j);
      }
    }
    if (r2s.empty()) break;
    // tie-aware argmax, same rule as the incremental version
    double top = -1.0;
    for (const double r : r2s) top = std::max(top, r);
    std::size_t pick = 0;
    while (r2s[pick] < top - kStepwiseTieTol) ++pick;
    const auto [best_i, best_j] = cand_edges[pick];
    const double gain_r2 = r2s[pick] - out.trace.back();

    selected.emplace_back(best_i, best_j);
    const double prev = out.trace.back();
    const double r2 = std::min(1.0, std::max(prev, prev + gain_r2));
    out.trace.push_back(r2);
    out.edges.push_back({best_i, best_j, r2 - prev});
  }

  out.weights = WeightMatrix::from_edges(d, out.edges);
  return out;
}

Matrix apply_rows_serial(const Matrix& forward, const Matrix& data) {
  const Eigen::Index n = data.rows();
  Matrix out(n, forward.rows());
  for (Eigen::Index r = 0; r < n; ++r) {
    const Vector lx = data.row(r).transpose().array().log().matrix();
    out.row(r) = (forward * lx).transpose();
  }
  return out;
}

}  // namespace reference
}  // namespace gcoda
