#include "gcoda/transforms.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace gcoda {

namespace {

// Extracts the Laplacian block of one component in the order given by perm
// (original vertex labels).
Matrix component_block(const Laplacian& lap, const std::vector<int>& perm) {
  const int k = static_cast<int>(perm.size());
  Matrix block(k, k);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      block(p, q) = lap.matrix()(perm[static_cast<std::size_t>(p)],
                                 perm[static_cast<std::size_t>(q)]);
    }
  }
  return block;
}

std::vector<std::vector<int>> resolve_permutations(
    const Laplacian& lap, const std::vector<std::vector<int>>& perms) {
  const auto& comps = lap.partition().components;
  if (perms.empty()) return comps;
  if (perms.size() != comps.size()) {
    throw ValidationError("gilr1: expected one permutation per component");
  }
  for (std::size_t m = 0; m < comps.size(); ++m) {
    std::vector<int> sorted = perms[m];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != comps[m]) {
      throw ValidationError(
          "gilr1: permutation " + std::to_string(m + 1) +
          " is not a rearrangement of the component's vertices");
    }
  }
  return perms;
}

Vector log_of(const Vector& x, const char* what) {
  require_positive(x, what);
  return x.array().log().matrix();
}

}  // namespace

Matrix laplacian_cholesky(const Matrix& block) {
  if (block.rows() != block.cols() || block.rows() < 1) {
    throw ValidationError("laplacian_cholesky: block must be square");
  }
  const int k = static_cast<int>(block.rows());
  if (k == 1) return Matrix::Zero(1, 1);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
  if (solver.info() != Eigen::Success) {
    throw NumericError("laplacian_cholesky: eigendecomposition failed");
  }
  Vector mu = solver.eigenvalues();
  const double scale = std::max(1.0, mu[k - 1]);
  int zeros = 0;
  for (int i = 0; i < k; ++i) {
    if (mu[i] <= kZeroEigTol * scale) ++zeros;
  }
  if (zeros != 1) {
    throw ValidationError(
        "laplacian_cholesky: block is not a connected component (kernel "
        "dimension " + std::to_string(zeros) + ")");
  }
  mu[0] = 0.0;
  Matrix sqrt_block = solver.eigenvectors() *
                      mu.cwiseSqrt().asDiagonal() *
                      solver.eigenvectors().transpose();
  sqrt_block = 0.5 * (sqrt_block + sqrt_block.transpose());

  Eigen::HouseholderQR<Matrix> qr(sqrt_block);
  Matrix c = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int r = 0; r < k; ++r) {
    if (c(r, r) < 0.0) c.row(r) = -c.row(r);
  }
  c.row(k - 1).setZero();
  return c;
}

GilrBasis make_weighted_clr(const Laplacian& lap, double alpha) {
  if (alpha < 0.0) throw ValidationError("weighted clr: alpha must be >= 0");
  const int d = lap.dim();
  const Matrix& u = lap.eigenvectors();
  Vector shifted = lap.eigenvalues().array() + alpha;
  GilrBasis basis;
  basis.kind = GilrKind::WeightedClr;
  basis.alpha = alpha;
  basis.partition = lap.partition();
  basis.permutations = lap.partition().components;
  basis.forward = u * shifted.cwiseSqrt().asDiagonal() * u.transpose();
  Vector inv_sqrt = Vector::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (shifted[i] > 0.0) inv_sqrt[i] = 1.0 / std::sqrt(shifted[i]);
  }
  basis.inverse_log = u * inv_sqrt.asDiagonal() * u.transpose();
  return basis;
}

GilrBasis make_gilr1(const Laplacian& lap, double alpha,
                     const std::vector<std::vector<int>>& permutations) {
  if (alpha < 0.0) throw ValidationError("gilr1: alpha must be >= 0");
  const auto perms = resolve_permutations(lap, permutations);
  const int d = lap.dim();
  const bool reduced = (alpha == 0.0);
  int coords = 0;
  for (const auto& p : perms) {
    coords += static_cast<int>(p.size()) - (reduced ? 1 : 0);
  }

  GilrBasis basis;
  basis.kind = reduced ? GilrKind::Gilr1Reduced : GilrKind::Gilr1Full;
  basis.alpha = alpha;
  basis.partition = lap.partition();
  basis.permutations = perms;
  basis.forward = Matrix::Zero(coords, d);
  basis.inverse_log = Matrix::Zero(d, coords);

  int row0 = 0;
  for (const auto& perm : perms) {
    const int k = static_cast<int>(perm.size());
    Matrix block = component_block(lap, perm);
    if (reduced) {
      const Matrix c = laplacian_cholesky(block);
      for (int r = 0; r + 1 < k; ++r) {
        for (int p = 0; p < k; ++p) {
          basis.forward(row0 + r, perm[static_cast<std::size_t>(p)]) = c(r, p);
        }
      }
      // Unique log preimage with a zero component mean: stack the reduced
      // rows on top of 1' and invert once.
      Matrix aug(k, k);
      aug.topRows(k - 1) = c.topRows(k - 1);
      aug.row(k - 1).setOnes();
      Matrix aug_inv = aug.inverse();
      for (int p = 0; p < k; ++p) {
        for (int cidx = 0; cidx + 1 < k; ++cidx) {
          basis.inverse_log(perm[static_cast<std::size_t>(p)], row0 + cidx) =
              aug_inv(p, cidx);
        }
      }
      row0 += k - 1;
    } else {
      block.diagonal().array() += alpha;
      Eigen::LLT<Matrix> llt(block);
      if (llt.info() != Eigen::Success) {
        throw NumericError("gilr1: Cholesky of alpha I + L block failed");
      }
      const Matrix c = llt.matrixL().transpose();
      const Matrix c_inv =
          c.triangularView<Eigen::Upper>().solve(Matrix::Identity(k, k));
      for (int r = 0; r < k; ++r) {
        for (int p = 0; p < k; ++p) {
          basis.forward(row0 + r, perm[static_cast<std::size_t>(p)]) = c(r, p);
          basis.inverse_log(perm[static_cast<std::size_t>(p)], row0 + r) =
              c_inv(p, r);
        }
      }
      row0 += k;
    }
  }
  return basis;
}

GilrBasis make_gilr2(const Laplacian& lap, double alpha) {
  if (alpha < 0.0) throw ValidationError("gilr2: alpha must be >= 0");
  const int d = lap.dim();
  const int skip = (alpha == 0.0) ? lap.components() : 0;
  const int coords = d - skip;

  GilrBasis basis;
  basis.kind = GilrKind::Gilr2;
  basis.alpha = alpha;
  basis.partition = lap.partition();
  basis.permutations = lap.partition().components;
  basis.forward = Matrix::Zero(coords, d);
  basis.inverse_log = Matrix::Zero(d, coords);
  // Eigenvalues come ascending; coordinates run from biggest to smallest.
  for (int r = 0; r < coords; ++r) {
    const int src = d - 1 - r;
    const double lambda = lap.eigenvalues()[src] + alpha;
    basis.forward.row(r) =
        std::sqrt(lambda) * lap.eigenvectors().col(src).transpose();
    basis.inverse_log.col(r) =
        lap.eigenvectors().col(src) / std::sqrt(lambda);
  }
  return basis;
}

Vector apply(const GilrBasis& basis, const Vector& x) {
  if (x.size() != basis.dim()) {
    throw ValidationError("transform: composition has dimension " +
                          std::to_string(x.size()) + ", expected " +
                          std::to_string(basis.dim()));
  }
  return basis.forward * log_of(x, "transform");
}

Vector invert(const GilrBasis& basis, const Vector& z,
              const GraphSimplexSpec* spec) {
  if (!basis.invertible()) {
    throw ValidationError(
        "invert: the weighted clr map is not one-to-one for alpha = 0");
  }
  if (z.size() != basis.coords()) {
    throw ValidationError("invert: coordinate vector has dimension " +
                          std::to_string(z.size()) + ", expected " +
                          std::to_string(basis.coords()));
  }
  Vector logx = basis.inverse_log * z;
  Vector x = logx.array().exp().matrix();
  if (basis.alpha > 0.0) return x;
  if (spec != nullptr) {
    if (spec->dim() != basis.dim()) {
      throw ValidationError("invert: simplex spec dimension mismatch");
    }
    return spec->renormalize(x);
  }
  return GraphSimplexSpec::unit(basis.partition).renormalize(x);
}

Matrix apply_rows(const GilrBasis& basis, const Matrix& data) {
  if (data.cols() != basis.dim()) {
    throw ValidationError("transform: data has " +
                          std::to_string(data.cols()) + " columns, expected " +
                          std::to_string(basis.dim()));
  }
  const int n = static_cast<int>(data.rows());
  Matrix out(n, basis.coords());
#pragma omp parallel for schedule(static)
  for (int r = 0; r < n; ++r) {
    out.row(r) = apply(basis, data.row(r).transpose()).transpose();
  }
  return out;
}

Matrix invert_rows(const GilrBasis& basis, const Matrix& coords,
                   const GraphSimplexSpec* spec) {
  const int n = static_cast<int>(coords.rows());
  Matrix out(n, basis.dim());
#pragma omp parallel for schedule(static)
  for (int r = 0; r < n; ++r) {
    out.row(r) = invert(basis, coords.row(r).transpose(), spec).transpose();
  }
  return out;
}

Vector centered_neighborhood_map(const Vector& x, const Laplacian& lap,
                                 double alpha) {
  const Vector lx = log_of(x, "centered neighborhood map");
  if (x.size() != lap.dim()) {
    throw ValidationError("centered neighborhood map: dimension mismatch");
  }
  return alpha * lx + lap.matrix() * lx;
}

std::vector<Vector> orthonormal_basis(const GilrBasis& basis,
                                      const GraphSimplexSpec* spec) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(basis.coords()));
  for (int i = 0; i < basis.coords(); ++i) {
    Vector e = Vector::Zero(basis.coords());
    e[i] = 1.0;
    out.push_back(invert(basis, e, spec));
  }
  return out;
}

Vector pivot_ilr(const Vector& x) {
  const Vector lx = log_of(x, "pivot ilr");
  const int d = static_cast<int>(x.size());
  if (d < 2) throw ValidationError("pivot ilr: need at least two parts");
  // Suffix means of log x make each coordinate O(D) instead of O(D^2).
  Vector suffix(d + 1);
  suffix[d] = 0.0;
  for (int j = d - 1; j >= 0; --j) suffix[j] = suffix[j + 1] + lx[j];
  Vector z(d - 1);
  for (int j = 0; j < d - 1; ++j) {
    const double tail = d - j - 1;
    const double mean_tail = suffix[j + 1] / tail;
    z[j] = std::sqrt(tail / (tail + 1.0)) * (lx[j] - mean_tail);
  }
  return z;
}

std::vector<FourierCoefficient> graph_fourier(const Vector& x,
                                              const Laplacian& lap) {
  const Vector lx = log_of(x, "graph Fourier");
  if (x.size() != lap.dim()) {
    throw ValidationError("graph Fourier: dimension mismatch");
  }
  std::vector<FourierCoefficient> table;
  table.reserve(static_cast<std::size_t>(lap.dim()));
  for (int i = 0; i < lap.dim(); ++i) {
    table.push_back({lap.eigenvalues()[i], lap.eigenvectors().col(i).dot(lx)});
  }
  return table;
}

}  // namespace gcoda
