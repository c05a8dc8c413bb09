// Graph core: weight matrices, Laplacians, connectivity, incidence.
#pragma once

#include <vector>

#include "gcoda/common.hpp"

namespace gcoda {

struct Edge {
  int i = 0;  // 0-based, i < j
  int j = 0;
  double w = 0.0;
};

/// Symmetric nonnegative edge-weight matrix with zero diagonal.
class WeightMatrix {
 public:
  /// Validates symmetry, zero diagonal and nonnegativity; throws
  /// ValidationError naming the violated invariant and its position.
  explicit WeightMatrix(Matrix w);

  static WeightMatrix zero(int dim);
  /// Fully connected graph with w_ij = 1/D; recovers Aitchison geometry.
  static WeightMatrix aitchison(int dim);
  /// Vertex 0 connected to all others with weight w.
  static WeightMatrix star(int dim, double w = 1.0);
  static WeightMatrix from_edges(int dim, const std::vector<Edge>& edges);

  int dim() const { return static_cast<int>(w_.rows()); }
  const Matrix& matrix() const { return w_; }
  double operator()(int i, int j) const { return w_(i, j); }

  /// Edges with i < j and w > 0, lexicographically ordered.
  std::vector<Edge> edge_list() const;

 private:
  Matrix w_;
};

/// Averages an asymmetric nonnegative weight matrix into a symmetric one;
/// quadratic forms are unchanged.
WeightMatrix symmetrize(const Matrix& u);

struct ComponentPartition {
  int count = 0;                            // M
  std::vector<std::vector<int>> components;  // original labels, each sorted
  // block_to_orig[k] = original index of the k-th vertex when components are
  // laid out contiguously (ordered by smallest member); the permutation that
  // makes the Laplacian block diagonal.
  std::vector<int> block_to_orig;

  int dim() const { return static_cast<int>(block_to_orig.size()); }
  int component_of(int vertex) const;
  Matrix permutation_matrix() const;  // P with (P x)_k = x_{block_to_orig[k]}
};

ComponentPartition connected_components(const WeightMatrix& w);

/// L = diag(W 1) - W together with its partition, kernel indicators and a
/// full spectral decomposition (computed once; the object is immutable and
/// safe to share across threads).
class Laplacian {
 public:
  explicit Laplacian(const WeightMatrix& w);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }
  const Vector& degrees() const { return degrees_; }
  const WeightMatrix& weights() const { return weights_; }
  const ComponentPartition& partition() const { return partition_; }
  int components() const { return partition_.count; }

  /// Eigenvalues in ascending order; the first components() of them are
  /// exact zeros of the graph (clamped, kernel decided combinatorially).
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

  /// Indicator vectors of the components, spanning the kernel (D x M).
  Matrix kernel_indicator_basis() const;

  /// Moore-Penrose inverse through the spectral decomposition.
  Matrix pseudo_inverse() const;

 private:
  WeightMatrix weights_;
  Matrix mat_;
  Vector degrees_;
  ComponentPartition partition_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

inline Laplacian build_laplacian(const WeightMatrix& w) { return Laplacian(w); }

/// Graph differentiation operator: one stored row per unordered edge
/// (i < j), +w_ij^exponent at column i and -w_ij^exponent at column j.
/// The full directed-edge operator contains each row with both signs, so
/// its Gram matrix equals 2 L when exponent = 1/2; directed_gram() returns
/// that product without materializing the doubled matrix.
class IncidenceMatrix {
 public:
  IncidenceMatrix(const WeightMatrix& w, double exponent);

  const Matrix& rows() const { return rows_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Gram matrix of the directed-edge operator, = 2 rows()' rows().
  Matrix directed_gram() const { return 2.0 * rows_.transpose() * rows_; }

  /// (d f)_e = w_ij^exponent (f_i - f_j) per unordered edge.
  Vector apply(const Vector& f) const;

 private:
  std::vector<Edge> edges_;
  Matrix rows_;
};

/// f' L g. Equals half the weighted double sum of pairwise differences.
double quadratic_form(const Laplacian& lap, const Vector& f, const Vector& g);

}  // namespace gcoda
