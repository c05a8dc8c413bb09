// Quotient-space extension: contrast matrices with signed weights, the
// induced equivalence-class geometry and its spectral isometry.
#pragma once

#include <vector>

#include "gcoda/graph.hpp"

namespace gcoda {

/// One analyzed combination sum_j w_j log(x_anchor / x_j).
struct AnchorCombination {
  int anchor = 0;                            // 0-based variable index
  std::vector<std::pair<int, double>> weights;  // (variable, weight), signed
};

/// One term w * log(x_i / x_j) of a ratio-subset combination.
struct RatioTerm {
  int i = 0;
  int j = 0;
  double w = 0.0;
};

/// K x D matrix of log-contrast rows; every row annihilates the constant
/// vector, so the induced bilinear form is scale invariant.
class ContrastMatrix {
 public:
  /// Validates row sums against zero (relative to the row magnitude).
  static ContrastMatrix from_rows(Matrix rows);

  const Matrix& rows() const { return rows_; }
  int combinations() const { return static_cast<int>(rows_.rows()); }
  int dim() const { return static_cast<int>(rows_.cols()); }

  /// The vector of combination values, rows * log x.
  Vector apply(const Vector& x) const;

 private:
  explicit ContrastMatrix(Matrix rows) : rows_(std::move(rows)) {}
  Matrix rows_;
};

ContrastMatrix contrast_from_weighted_combinations(
    int dim, const std::vector<AnchorCombination>& combinations);

ContrastMatrix contrast_from_ratio_subsets(
    int dim, const std::vector<std::vector<RatioTerm>>& subsets);

/// Geometry of compositions modulo the kernel of a PSD operator that may
/// come from signed weights. Built from a contrast matrix as L'L or from a
/// symmetric PSD matrix supplied directly.
class QuotientSpace {
 public:
  static QuotientSpace from_contrast(const ContrastMatrix& c);
  /// Requires symmetry, positive semi-definiteness and 1 in the kernel.
  static QuotientSpace from_psd(Matrix l);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }
  int kernel_dim() const { return static_cast<int>(kernel_.cols()); }
  /// Orthonormal kernel basis, D x kernel_dim.
  const Matrix& kernel_basis() const { return kernel_; }
  /// Nonzero eigenvalues, descending, paired with positive_vectors().
  const Vector& positive_eigenvalues() const { return pos_eigenvalues_; }
  const Matrix& positive_vectors() const { return pos_vectors_; }

  Matrix pseudo_inverse() const;
  /// Orthogonal projection of a log vector onto the kernel complement.
  Vector project_log(const Vector& logx) const;

 private:
  QuotientSpace() = default;
  static QuotientSpace build(Matrix l, bool validated_psd);
  Matrix mat_;
  Matrix kernel_;
  Vector pos_eigenvalues_;
  Matrix pos_vectors_;
};

/// <log x, L log y>; constant on equivalence classes.
double quotient_inner_product(const Vector& x, const Vector& y,
                              const QuotientSpace& space);

/// Canonical class representative: exp of the kernel-free part of log x.
Vector class_representative(const Vector& x, const QuotientSpace& space);

Vector quotient_perturb(const Vector& x, const Vector& y,
                        const QuotientSpace& space);
Vector quotient_power(double alpha, const Vector& x,
                      const QuotientSpace& space);

/// sqrt(lambda_i) <u_i, log x> over the nonzero spectrum (descending).
Vector quotient_gilr(const Vector& x, const QuotientSpace& space);
/// Inverse of quotient_gilr landing on the canonical representative.
Vector quotient_gilr_inverse(const Vector& z, const QuotientSpace& space);

/// Splits a symmetric matrix with L 1 = 0 into diag(W 1) - W; off-diagonal
/// weights w_ij = -L_ij may be negative. Exact by construction.
Matrix signed_decomposition(const Matrix& l);

/// Quotient space of the degenerate normal obtained by pushing an ilr
/// covariance back to log space: L = L_A V Sigma^{-1} V' L_A.
QuotientSpace degenerate_gaussian_covariance(const Matrix& v,
                                             const Matrix& sigma);

}  // namespace gcoda
