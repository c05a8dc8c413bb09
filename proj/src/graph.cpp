#include "gcoda/graph.hpp"

#include <algorithm>
#include <cmath>

namespace gcoda {

namespace {

void validate_weights(const Matrix& w) {
  if (w.rows() != w.cols() || w.rows() < 1) {
    throw ValidationError("weight matrix must be square and non-empty");
  }
  const int d = static_cast<int>(w.rows());
  for (int i = 0; i < d; ++i) {
    if (w(i, i) != 0.0) {
      throw ValidationError("weight matrix diagonal must be zero (row " +
                            std::to_string(i + 1) + ")");
    }
    for (int j = 0; j < d; ++j) {
      const double v = w(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("weight matrix entries must be finite and "
                              "nonnegative (row " + std::to_string(i + 1) +
                              ", column " + std::to_string(j + 1) + ")");
      }
      if (w(i, j) != w(j, i)) {
        throw ValidationError("weight matrix symmetry violated at (" +
                              std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
      }
    }
  }
}

}  // namespace

WeightMatrix::WeightMatrix(Matrix w) : w_(std::move(w)) {
  validate_weights(w_);
}

WeightMatrix WeightMatrix::zero(int dim) {
  return WeightMatrix(Matrix::Zero(dim, dim));
}

WeightMatrix WeightMatrix::aitchison(int dim) {
  Matrix w = Matrix::Constant(dim, dim, 1.0 / dim);
  w.diagonal().setZero();
  return WeightMatrix(std::move(w));
}

WeightMatrix WeightMatrix::star(int dim, double w) {
  Matrix m = Matrix::Zero(dim, dim);
  for (int j = 1; j < dim; ++j) {
    m(0, j) = m(j, 0) = w;
  }
  return WeightMatrix(std::move(m));
}

WeightMatrix WeightMatrix::from_edges(int dim, const std::vector<Edge>& edges) {
  Matrix m = Matrix::Zero(dim, dim);
  for (const Edge& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= dim || e.j >= dim) {
      throw ValidationError("edge (" + std::to_string(e.i + 1) + "," +
                            std::to_string(e.j + 1) +
                            ") is out of range for dimension " +
                            std::to_string(dim));
    }
    if (e.i == e.j) {
      throw ValidationError("self-loop at vertex " + std::to_string(e.i + 1));
    }
    m(e.i, e.j) += e.w;
    m(e.j, e.i) += e.w;
  }
  return WeightMatrix(std::move(m));
}

std::vector<Edge> WeightMatrix::edge_list() const {
  std::vector<Edge> edges;
  const int d = dim();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (w_(i, j) != 0.0) {
        edges.push_back({i, j, w_(i, j)});
      }
    }
  }
  return edges;
}

WeightMatrix symmetrize(const Matrix& u) {
  if (u.rows() != u.cols()) {
    throw ValidationError("weight matrix must be square");
  }
  const int d = static_cast<int>(u.rows());
  for (int i = 0; i < d; ++i) {
    if (u(i, i) != 0.0) {
      throw ValidationError("weight matrix diagonal must be zero (row " +
                            std::to_string(i + 1) + ")");
    }
    for (int j = 0; j < d; ++j) {
      if (!std::isfinite(u(i, j)) || u(i, j) < 0.0) {
        throw ValidationError("weight matrix entries must be finite and "
                              "nonnegative (row " + std::to_string(i + 1) +
                              ", column " + std::to_string(j + 1) + ")");
      }
    }
  }
  return WeightMatrix(0.5 * (u + u.transpose()));
}

int ComponentPartition::component_of(int vertex) const {
  for (int m = 0; m < count; ++m) {
    const auto& comp = components[static_cast<std::size_t>(m)];
    if (std::binary_search(comp.begin(), comp.end(), vertex)) {
      return m;
    }
  }
  throw ValidationError("vertex " + std::to_string(vertex + 1) +
                        " not covered by the partition");
}

Matrix ComponentPartition::permutation_matrix() const {
  const int d = dim();
  Matrix p = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    p(k, block_to_orig[static_cast<std::size_t>(k)]) = 1.0;
  }
  return p;
}

ComponentPartition connected_components(const WeightMatrix& w) {
  const int d = w.dim();
  std::vector<int> label(static_cast<std::size_t>(d), -1);
  int count = 0;
  for (int start = 0; start < d; ++start) {
    if (label[static_cast<std::size_t>(start)] >= 0) continue;
    // depth-first sweep from the smallest unvisited vertex
    std::vector<int> stack{start};
    label[static_cast<std::size_t>(start)] = count;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < d; ++u) {
        if (w(v, u) != 0.0 && label[static_cast<std::size_t>(u)] < 0) {
          label[static_cast<std::size_t>(u)] = count;
          stack.push_back(u);
        }
      }
    }
    ++count;
  }
  ComponentPartition part;
  part.count = count;
  part.components.assign(static_cast<std::size_t>(count), {});
  for (int v = 0; v < d; ++v) {
    part.components[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])]
        .push_back(v);
  }
  // components are discovered in order of smallest vertex and each list is
  // built in ascending vertex order, so the layout is deterministic
  for (const auto& comp : part.components) {
    part.block_to_orig.insert(part.block_to_orig.end(), comp.begin(),
                              comp.end());
  }
  return part;
}

Laplacian::Laplacian(const WeightMatrix& w)
    : weights_(w),
      degrees_(w.matrix().rowwise().sum()),
      partition_(connected_components(w)) {
  mat_ = Matrix(degrees_.asDiagonal());
  mat_ -= w.matrix();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(mat_);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Laplacian eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  // The kernel dimension is the component count; clamp those eigenvalues
  // to exact zeros so downstream square roots stay clean.
  for (int k = 0; k < partition_.count; ++k) {
    eigenvalues_[k] = 0.0;
  }
  for (int k = partition_.count; k < dim(); ++k) {
    if (eigenvalues_[k] < 0.0) eigenvalues_[k] = 0.0;
  }
}

Matrix Laplacian::kernel_indicator_basis() const {
  Matrix basis = Matrix::Zero(dim(), partition_.count);
  for (int m = 0; m < partition_.count; ++m) {
    for (int v : partition_.components[static_cast<std::size_t>(m)]) {
      basis(v, m) = 1.0;
    }
  }
  return basis;
}

Matrix Laplacian::pseudo_inverse() const {
  Vector inv = Vector::Zero(dim());
  for (int k = partition_.count; k < dim(); ++k) {
    inv[k] = 1.0 / eigenvalues_[k];
  }
  return eigenvectors_ * inv.asDiagonal() * eigenvectors_.transpose();
}

IncidenceMatrix::IncidenceMatrix(const WeightMatrix& w, double exponent)
    : edges_(w.edge_list()) {
  rows_ = Matrix::Zero(static_cast<Eigen::Index>(edges_.size()), w.dim());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const double v = std::pow(edges_[e].w, exponent);
    rows_(static_cast<Eigen::Index>(e), edges_[e].i) = v;
    rows_(static_cast<Eigen::Index>(e), edges_[e].j) = -v;
  }
}

Vector IncidenceMatrix::apply(const Vector& f) const {
  if (f.size() != rows_.cols()) {
    throw ValidationError("incidence apply: vector has dimension " +
                          std::to_string(f.size()) + ", expected " +
                          std::to_string(rows_.cols()));
  }
  return rows_ * f;
}

double quadratic_form(const Laplacian& lap, const Vector& f, const Vector& g) {
  if (f.size() != lap.dim() || g.size() != lap.dim()) {
    throw ValidationError("quadratic form: dimension mismatch");
  }
  return f.dot(lap.matrix() * g);
}

}  // namespace gcoda
