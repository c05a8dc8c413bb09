// Log-ratio transforms for graph geometries: weighted clr, the two graph
// isometric log-ratio maps, their inverses, orthonormal systems, the pivot
// ilr baseline and the graph Fourier view.
#pragma once

#include <vector>

#include "gcoda/geometry.hpp"

namespace gcoda {

enum class GilrKind { WeightedClr, Gilr1Reduced, Gilr1Full, Gilr2 };

/// A realized linear log-ratio isometry. `forward` acts on log x in the
/// original vertex order; `inverse_log` maps coordinates back to a log
/// composition (the canonical kernel-free representative when alpha = 0).
/// Immutable once built; application is pure and thread-safe.
struct GilrBasis {
  GilrKind kind = GilrKind::Gilr2;
  double alpha = 0.0;
  Matrix forward;      // coords x D
  Matrix inverse_log;  // D x coords
  ComponentPartition partition;
  std::vector<std::vector<int>> permutations;  // per component, original labels

  int dim() const { return static_cast<int>(forward.cols()); }
  int coords() const { return static_cast<int>(forward.rows()); }
  bool invertible() const {
    return kind != GilrKind::WeightedClr || alpha > 0.0;
  }
};

/// (alpha I + L)^{1/2} log x as a basis; distance preserving, not sparse.
GilrBasis make_weighted_clr(const Laplacian& lap, double alpha);

/// Triangular (Cholesky-type) isometry. For alpha = 0 each component
/// contributes |V_m| - 1 coordinates, for alpha > 0 all |V_m|. The
/// permutations choose which variable leads each component's contrasts;
/// empty means ascending vertex order.
GilrBasis make_gilr1(const Laplacian& lap, double alpha,
                     const std::vector<std::vector<int>>& permutations = {});

/// Spectral isometry: coordinate i is sqrt(lambda_i) <u_i, log x> with
/// eigenvalues of alpha I + L ordered from biggest to smallest, zero
/// eigenvalues dropped.
GilrBasis make_gilr2(const Laplacian& lap, double alpha);

Vector apply(const GilrBasis& basis, const Vector& x);

/// Inverse map. For alpha = 0 the result is closed per component to the
/// spec's kappa (unit kappa when spec is null).
Vector invert(const GilrBasis& basis, const Vector& z,
              const GraphSimplexSpec* spec = nullptr);

/// Row-wise application to an N x D data matrix (OpenMP across rows).
Matrix apply_rows(const GilrBasis& basis, const Matrix& data);
Matrix invert_rows(const GilrBasis& basis, const Matrix& coords,
                   const GraphSimplexSpec* spec = nullptr);

/// (alpha I + L) log x; entry j reads log(x_j^(alpha+d_j) / prod x_i^w_ij).
Vector centered_neighborhood_map(const Vector& x, const Laplacian& lap,
                                 double alpha);

/// Triangular factor of a connected component block: upper triangular C with
/// C'C = block, zero last row, C 1 = 0 and positive leading diagonal.
/// Built by eigendecomposition, QR of the symmetric square root and a sign
/// pass. Throws ValidationError when the block is not connected (rank
/// deficit above one).
Matrix laplacian_cholesky(const Matrix& component_block);

/// Compositions v_i with F(v_i) = e_i; orthonormal under <.,.>_{W,alpha}.
std::vector<Vector> orthonormal_basis(const GilrBasis& basis,
                                      const GraphSimplexSpec* spec = nullptr);

/// Classical pivot ilr coordinates (Aitchison geometry baseline).
Vector pivot_ilr(const Vector& x);

struct FourierCoefficient {
  double frequency = 0.0;   // Laplacian eigenvalue
  double projection = 0.0;  // <u_i, log x>
};

/// Full spectral table of log x ordered by increasing frequency; the
/// leading entries carry the smooth part of the signal.
std::vector<FourierCoefficient> graph_fourier(const Vector& x,
                                              const Laplacian& lap);

}  // namespace gcoda
