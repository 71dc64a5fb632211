#pragma once

#include <vector>

#include "conekit/types.hpp"

namespace conekit {

// Raised when the dominant eigenvalue is complex, nonpositive, or the
// spectral gap 1 - |l2|/|l1| falls below kEigGapEps.
struct NoStrictDominance : std::runtime_error {
  explicit NoStrictDominance(const std::string& what) : std::runtime_error(what) {}
};

// Raised when power iteration fails to reach the residual target.
struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Spectral data for a matrix with a strictly dominant positive eigenvalue:
// the eigenvalue, unit right/left eigenvectors, and the gap |l2|/|l1|.
// `right` spans the dominant direction; `left` is the inward normal of the
// complementary invariant subspace N = left^perp, so A N = N and
// span(right) + N = R^n.
struct InvariantSplitting {
  double lambda = 0.0;
  Vector right;
  Vector left;
  double gap = 0.0;  // |l2| / |l1|; 0 when n == 1
};

// Simple, strictly dominant, real positive eigenvalue of A with certified
// right and left eigenvectors. Power iteration refines the pair until
// |A v - lambda v| <= tol * |lambda| (and likewise for the left pair);
// dominance and the gap are certified against the full spectrum.
// Throws NoStrictDominance / NoConvergence / DimensionMismatch.
InvariantSplitting dominant_eigenpair(const Matrix& A, double tol = 1e-10,
                                      int max_iter = 10000);

// Product of a switching word applied left to right: for factors
// [A_1, A_2, ..., A_r] returns A_r * ... * A_2 * A_1, i.e. the matrix that
// maps x(0) to x(r). Throws DimensionMismatch; the list must be non-empty.
Matrix matrix_product(const std::vector<Matrix>& factors);

// Canonical sign: flips v so that its largest-magnitude entry is positive.
// Resolves the +/- ambiguity of unit eigenvectors deterministically.
Vector canonical_sign(const Vector& v);

}  // namespace conekit
