#include "gcoda/quotient.hpp"

#include <cmath>

namespace gcoda {

namespace {

Vector log_checked(const Vector& x, const char* what) {
  require_positive(x, what);
  return x.array().log().matrix();
}

}  // namespace

ContrastMatrix ContrastMatrix::from_rows(Matrix rows) {
  if (rows.rows() < 1 || rows.cols() < 1) {
    throw ValidationError("contrast matrix must be non-empty");
  }
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    const double sum = rows.row(r).sum();
    const double scale = std::max(1.0, rows.row(r).cwiseAbs().maxCoeff());
    if (std::abs(sum) > 1e-10 * scale) {
      throw ValidationError("contrast row " + std::to_string(r + 1) +
                            " does not sum to zero");
    }
  }
  return ContrastMatrix(std::move(rows));
}

Vector ContrastMatrix::apply(const Vector& x) const {
  if (x.size() != dim()) {
    throw ValidationError("contrast apply: dimension mismatch");
  }
  return rows_ * log_checked(x, "contrast apply");
}

ContrastMatrix contrast_from_weighted_combinations(
    int dim, const std::vector<AnchorCombination>& combinations) {
  if (combinations.empty()) {
    throw ValidationError("weighted combinations: need at least one row");
  }
  Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(combinations.size()),
                             dim);
  for (std::size_t r = 0; r < combinations.size(); ++r) {
    const auto& comb = combinations[r];
    if (comb.anchor < 0 || comb.anchor >= dim) {
      throw ValidationError("weighted combinations: anchor index " +
                            std::to_string(comb.anchor + 1) +
                            " out of range");
    }
    double total = 0.0;
    for (const auto& [idx, w] : comb.weights) {
      if (idx < 0 || idx >= dim) {
        throw ValidationError("weighted combinations: variable index " +
                              std::to_string(idx + 1) + " out of range");
      }
      rows(static_cast<Eigen::Index>(r), idx) -= w;
      total += w;
    }
    rows(static_cast<Eigen::Index>(r), comb.anchor) += total;
  }
  return ContrastMatrix::from_rows(std::move(rows));
}

ContrastMatrix contrast_from_ratio_subsets(
    int dim, const std::vector<std::vector<RatioTerm>>& subsets) {
  if (subsets.empty()) {
    throw ValidationError("ratio subsets: need at least one subset");
  }
  Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(subsets.size()), dim);
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    for (const RatioTerm& t : subsets[k]) {
      if (t.i < 0 || t.i >= dim || t.j < 0 || t.j >= dim) {
        throw ValidationError("ratio subsets: index out of range");
      }
      rows(static_cast<Eigen::Index>(k), t.i) += t.w;
      rows(static_cast<Eigen::Index>(k), t.j) -= t.w;
    }
  }
  return ContrastMatrix::from_rows(std::move(rows));
}

QuotientSpace QuotientSpace::build(Matrix l, bool validated_psd) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(l);
  if (solver.info() != Eigen::Success) {
    throw NumericError("quotient space: eigendecomposition failed");
  }
  const int d = static_cast<int>(l.rows());
  const Vector& mu = solver.eigenvalues();
  const double scale = std::max(1.0, mu[d - 1]);
  if (!validated_psd && mu[0] < -kZeroEigTol * scale) {
    throw ValidationError("quotient space: matrix is not positive "
                          "semi-definite");
  }
  int kernel = 0;
  while (kernel < d && mu[kernel] <= kZeroEigTol * scale) ++kernel;

  QuotientSpace out;
  out.mat_ = std::move(l);
  out.kernel_ = solver.eigenvectors().leftCols(kernel);
  const int pos = d - kernel;
  out.pos_eigenvalues_.resize(pos);
  out.pos_vectors_.resize(d, pos);
  for (int r = 0; r < pos; ++r) {
    out.pos_eigenvalues_[r] = mu[d - 1 - r];
    out.pos_vectors_.col(r) = solver.eigenvectors().col(d - 1 - r);
  }
  return out;
}

QuotientSpace QuotientSpace::from_contrast(const ContrastMatrix& c) {
  return build(c.rows().transpose() * c.rows(), true);
}

QuotientSpace QuotientSpace::from_psd(Matrix l) {
  if (l.rows() != l.cols() || l.rows() < 1) {
    throw ValidationError("quotient space: matrix must be square");
  }
  const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
  if ((l - l.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ValidationError("quotient space: matrix is not symmetric");
  }
  if ((l * Vector::Ones(l.rows())).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw ValidationError("quotient space: constant vector is not in the "
                          "kernel");
  }
  return build(std::move(l), false);
}

Matrix QuotientSpace::pseudo_inverse() const {
  return pos_vectors_ *
         pos_eigenvalues_.cwiseInverse().asDiagonal() *
         pos_vectors_.transpose();
}

Vector QuotientSpace::project_log(const Vector& logx) const {
  if (kernel_.cols() == 0) return logx;
  return logx - kernel_ * (kernel_.transpose() * logx);
}

double quotient_inner_product(const Vector& x, const Vector& y,
                              const QuotientSpace& space) {
  const Vector lx = log_checked(x, "quotient inner product");
  const Vector ly = log_checked(y, "quotient inner product");
  if (lx.size() != space.dim() || ly.size() != space.dim()) {
    throw ValidationError("quotient inner product: dimension mismatch");
  }
  return lx.dot(space.matrix() * ly);
}

Vector class_representative(const Vector& x, const QuotientSpace& space) {
  const Vector lx = log_checked(x, "class representative");
  if (lx.size() != space.dim()) {
    throw ValidationError("class representative: dimension mismatch");
  }
  return space.project_log(lx).array().exp().matrix();
}

Vector quotient_perturb(const Vector& x, const Vector& y,
                        const QuotientSpace& space) {
  const Vector lx = log_checked(x, "quotient perturb");
  const Vector ly = log_checked(y, "quotient perturb");
  if (lx.size() != space.dim() || ly.size() != space.dim()) {
    throw ValidationError("quotient perturb: dimension mismatch");
  }
  return space.project_log(lx + ly).array().exp().matrix();
}

Vector quotient_power(double alpha, const Vector& x,
                      const QuotientSpace& space) {
  const Vector lx = log_checked(x, "quotient power");
  if (lx.size() != space.dim()) {
    throw ValidationError("quotient power: dimension mismatch");
  }
  return space.project_log(alpha * lx).array().exp().matrix();
}

Vector quotient_gilr(const Vector& x, const QuotientSpace& space) {
  const Vector lx = log_checked(x, "quotient gilr");
  if (lx.size() != space.dim()) {
    throw ValidationError("quotient gilr: dimension mismatch");
  }
  return space.positive_eigenvalues().cwiseSqrt().asDiagonal() *
         (space.positive_vectors().transpose() * lx);
}

Vector quotient_gilr_inverse(const Vector& z, const QuotientSpace& space) {
  if (z.size() != space.positive_eigenvalues().size()) {
    throw ValidationError("quotient gilr inverse: dimension mismatch");
  }
  const Vector logx =
      space.positive_vectors() *
      (z.array() / space.positive_eigenvalues().array().sqrt()).matrix();
  return logx.array().exp().matrix();
}

Matrix signed_decomposition(const Matrix& l) {
  if (l.rows() != l.cols() || l.rows() < 1) {
    throw ValidationError("signed decomposition: matrix must be square");
  }
  const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
  if ((l - l.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ValidationError("signed decomposition: matrix is not symmetric");
  }
  if ((l * Vector::Ones(l.rows())).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw ValidationError("signed decomposition: row sums are not zero");
  }
  Matrix w = -l;
  w.diagonal().setZero();
  return w;
}

QuotientSpace degenerate_gaussian_covariance(const Matrix& v,
                                             const Matrix& sigma) {
  const int d = static_cast<int>(v.rows());
  if (v.cols() != d - 1) {
    throw ValidationError("degenerate covariance: V must be D x (D-1)");
  }
  if (sigma.rows() != d - 1 || sigma.cols() != d - 1) {
    throw ValidationError("degenerate covariance: Sigma must be "
                          "(D-1) x (D-1)");
  }
  if ((v.transpose() * v - Matrix::Identity(d - 1, d - 1))
          .cwiseAbs().maxCoeff() > 1e-8) {
    throw ValidationError("degenerate covariance: V columns are not "
                          "orthonormal");
  }
  if ((v.transpose() * Vector::Ones(d)).cwiseAbs().maxCoeff() > 1e-8) {
    throw ValidationError("degenerate covariance: V columns must sum to "
                          "zero");
  }
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw ValidationError("degenerate covariance: Sigma is not positive "
                          "definite");
  }
  const Matrix centering =
      Matrix::Identity(d, d) - Matrix::Constant(d, d, 1.0 / d);
  const Matrix sigma_inv = llt.solve(Matrix::Identity(d - 1, d - 1));
  Matrix l = centering * v * sigma_inv * v.transpose() * centering;
  l = 0.5 * (l + l.transpose());
  return QuotientSpace::from_psd(std::move(l));
}

}  // namespace gcoda
