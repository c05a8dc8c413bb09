// Shared aliases, error types and tolerances.
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gcoda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr const char* kVersion = "0.1.0";

// An eigenvalue of a PSD matrix counts as zero below this relative cutoff.
// The combinatorial component count stays authoritative wherever a graph
// is available; this cutoff is for matrices supplied without one.
inline constexpr double kZeroEigTol = 1e-9;

// Input-data violations (bad matrices, nonpositive compositions, ...).
// The CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failures of a numerical procedure (non-convergence, singular solves).
// The CLI maps these to exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_positive(const Vector& x, const char* what) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(x[i])) {
      throw ValidationError(std::string(what) + ": entry " +
                            std::to_string(i + 1) +
                            " is not strictly positive and finite");
    }
  }
}

}  // namespace gcoda
