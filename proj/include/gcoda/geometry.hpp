// Graph simplex geometry: perturbation/powering, the (W, alpha) inner
// product family and q-norms.
#pragma once

#include "gcoda/graph.hpp"

namespace gcoda {

/// Membership side of the graph simplex: parts sum to kappa_m on every
/// connected component.
struct GraphSimplexSpec {
  ComponentPartition partition;
  Vector kappa;  // one positive constant per component

  static GraphSimplexSpec unit(const ComponentPartition& part);

  int dim() const { return partition.dim(); }
  bool conforms(const Vector& x) const;
  /// Throws ValidationError when x is positive but off the simplex.
  void require(const Vector& x, const char* what) const;
  /// Exact per-component closure to kappa_m.
  Vector renormalize(const Vector& x) const;
  /// kappa_m / |V_m| on every component; the additive identity.
  Vector neutral() const;
};

Vector perturb_w(const Vector& x, const Vector& y, const GraphSimplexSpec& spec);
Vector power_w(double alpha, const Vector& x, const GraphSimplexSpec& spec);

struct InnerProductParams {
  double alpha = 0.0;      // weight of the absolute-information term
  int laplacian_power = 1;  // 1..4
};

/// alpha <log x, log y> + <log x, L^m log y>.
double inner_product(const Vector& x, const Vector& y, const Laplacian& lap,
                     const InnerProductParams& params = {});

double norm(const Vector& x, const Laplacian& lap,
            const InnerProductParams& params = {});

/// q in [1, inf]; pass std::numeric_limits<double>::infinity() for the max
/// norm. The infinity case applies the weights with exponent one, the
/// finite case with exponent 1/q.
double q_norm(const Vector& x, const WeightMatrix& w, double q, double alpha);

/// Classical Aitchison inner product (all pairwise log-ratios, weight 1/D).
double aitchison_inner(const Vector& x, const Vector& y);

}  // namespace gcoda
