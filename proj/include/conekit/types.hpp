#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace conekit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default tolerances. All comparisons against them are relative to the
// norms of the quantities involved unless noted otherwise.
inline constexpr double kTol = 1e-9;        // membership / rank decisions
inline constexpr double kStrictEps = 1e-7;  // interior-margin threshold
inline constexpr double kEigGapEps = 1e-6;  // required spectral gap 1 - |l2|/|l1|

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace conekit
