#include "gcoda/geometry.hpp"

#include <cmath>
#include <limits>

namespace gcoda {

GraphSimplexSpec GraphSimplexSpec::unit(const ComponentPartition& part) {
  return GraphSimplexSpec{part, Vector::Ones(part.count)};
}

bool GraphSimplexSpec::conforms(const Vector& x) const {
  if (x.size() != dim()) return false;
  for (int m = 0; m < partition.count; ++m) {
    double sum = 0.0;
    for (int v : partition.components[static_cast<std::size_t>(m)]) {
      if (!(x[v] > 0.0)) return false;
      sum += x[v];
    }
    if (std::abs(sum - kappa[m]) > 1e-8 * kappa[m]) return false;
  }
  return true;
}

void GraphSimplexSpec::require(const Vector& x, const char* what) const {
  require_positive(x, what);
  if (!conforms(x)) {
    throw ValidationError(std::string(what) +
                          ": composition is off the graph simplex "
                          "(component sums do not match kappa)");
  }
}

Vector GraphSimplexSpec::renormalize(const Vector& x) const {
  Vector out = x;
  for (int m = 0; m < partition.count; ++m) {
    double sum = 0.0;
    for (int v : partition.components[static_cast<std::size_t>(m)]) sum += x[v];
    if (!(sum > 0.0)) {
      throw ValidationError("renormalize: nonpositive component sum");
    }
    const double scale = kappa[m] / sum;
    for (int v : partition.components[static_cast<std::size_t>(m)]) {
      out[v] *= scale;
    }
  }
  return out;
}

Vector GraphSimplexSpec::neutral() const {
  Vector x(dim());
  for (int m = 0; m < partition.count; ++m) {
    const auto& comp = partition.components[static_cast<std::size_t>(m)];
    const double v = kappa[m] / static_cast<double>(comp.size());
    for (int idx : comp) x[idx] = v;
  }
  return x;
}

Vector perturb_w(const Vector& x, const Vector& y,
                 const GraphSimplexSpec& spec) {
  spec.require(x, "perturb");
  spec.require(y, "perturb");
  return spec.renormalize(x.cwiseProduct(y));
}

Vector power_w(double alpha, const Vector& x, const GraphSimplexSpec& spec) {
  spec.require(x, "power");
  return spec.renormalize(x.array().pow(alpha).matrix());
}

double inner_product(const Vector& x, const Vector& y, const Laplacian& lap,
                     const InnerProductParams& params) {
  require_positive(x, "inner product");
  require_positive(y, "inner product");
  if (x.size() != lap.dim() || y.size() != lap.dim()) {
    throw ValidationError("inner product: dimension mismatch");
  }
  if (params.alpha < 0.0) {
    throw ValidationError("inner product: alpha must be nonnegative");
  }
  if (params.laplacian_power < 1 || params.laplacian_power > 4) {
    throw ValidationError("inner product: Laplacian power must be in 1..4");
  }
  const Vector lx = x.array().log().matrix();
  const Vector ly = y.array().log().matrix();
  Vector lmy = lap.matrix() * ly;
  for (int k = 1; k < params.laplacian_power; ++k) {
    lmy = lap.matrix() * lmy;
  }
  double value = lx.dot(lmy);
  if (params.alpha != 0.0) {
    value += params.alpha * lx.dot(ly);
  }
  return value;
}

double norm(const Vector& x, const Laplacian& lap,
            const InnerProductParams& params) {
  const double v = inner_product(x, x, lap, params);
  return std::sqrt(std::max(v, 0.0));
}

double q_norm(const Vector& x, const WeightMatrix& w, double q, double alpha) {
  require_positive(x, "q-norm");
  if (x.size() != w.dim()) {
    throw ValidationError("q-norm: dimension mismatch");
  }
  if (alpha < 0.0) {
    throw ValidationError("q-norm: alpha must be nonnegative");
  }
  if (!(q >= 1.0)) {
    throw ValidationError("q-norm: q must be at least 1");
  }
  const Vector lx = x.array().log().matrix();
  if (std::isinf(q)) {
    const double node = alpha * lx.cwiseAbs().maxCoeff();
    const IncidenceMatrix d(w, 1.0);
    double edge = 0.0;
    if (d.edge_count() > 0) {
      edge = 0.5 * d.apply(lx).cwiseAbs().maxCoeff();
    }
    return std::max(node, edge);
  }
  // Each unordered edge appears with both orientations in the directed-edge
  // operator; the halved directed sum is one stored term per edge.
  const IncidenceMatrix d(w, 1.0 / q);
  double acc = alpha * lx.cwiseAbs().array().pow(q).sum();
  if (d.edge_count() > 0) {
    acc += d.apply(lx).cwiseAbs().array().pow(q).sum();
  }
  return std::pow(acc, 1.0 / q);
}

double aitchison_inner(const Vector& x, const Vector& y) {
  require_positive(x, "Aitchison inner product");
  require_positive(y, "Aitchison inner product");
  if (x.size() != y.size()) {
    throw ValidationError("Aitchison inner product: dimension mismatch");
  }
  const Eigen::Index d = x.size();
  const Vector lx = x.array().log().matrix();
  const Vector ly = y.array().log().matrix();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      acc += (lx[i] - lx[j]) * (ly[i] - ly[j]);
    }
  }
  return acc / (2.0 * static_cast<double>(d));
}

}  // namespace gcoda
