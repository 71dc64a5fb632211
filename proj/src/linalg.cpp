#include "conekit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

namespace conekit {

namespace {

// One-sided power iteration with Rayleigh-quotient estimates. `v0` must be
// a reasonable starting guess; convergence is declared on the relative
// residual |A v - lambda v| <= tol * max(|lambda|, scale).
struct PowerResult {
  double lambda;
  Vector v;
};

PowerResult power_refine(const Matrix& A, const Vector& v0, double tol,
                         int max_iter, const char* side) {
  const double scale = A.cwiseAbs().maxCoeff();
  Vector v = v0.normalized();
  for (int it = 0; it <= max_iter; ++it) {
    const Vector av = A * v;
    const double lambda = v.dot(av);
    if ((av - lambda * v).norm() <= tol * std::max(std::abs(lambda), scale))
      return {lambda, canonical_sign(v)};
    const double norm = av.norm();
    if (norm <= 0.0)
      throw NoConvergence(std::string(side) + " power iteration hit the zero vector");
    v = av / norm;
  }
  throw NoConvergence(std::string(side) +
                      " power iteration did not meet the residual target");
}

// Real eigenvector of the certified-real dominant eigenvalue, used to warm
// start the refinement.
Vector dominant_start(const Matrix& A) {
  Eigen::EigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success)
    throw NoConvergence("eigen-solve failed to converge");
  Eigen::Index best = 0;
  es.eigenvalues().cwiseAbs().maxCoeff(&best);
  Vector v = es.eigenvectors().col(best).real();
  if (v.norm() <= 1e-12 * std::sqrt(static_cast<double>(A.rows())))
    v = Vector::Ones(A.rows());
  return v;
}

}  // namespace

Vector canonical_sign(const Vector& v) {
  int imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  return v(imax) < 0.0 ? Vector(-v) : v;
}

InvariantSplitting dominant_eigenpair(const Matrix& A, double tol, int max_iter) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw DimensionMismatch("dominant_eigenpair expects a non-empty square matrix");
  if (!A.allFinite())
    throw std::invalid_argument("dominant_eigenpair: matrix has non-finite entries");
  const Eigen::Index n = A.rows();

  // Certify dominance against the full spectrum before refining.
  Eigen::EigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success)
    throw NoConvergence("eigen-solve failed to converge");
  std::vector<int> order(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<size_t>(i)] = static_cast<int>(i);
  const auto& evs = es.eigenvalues();
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(evs(a)) > std::abs(evs(b)); });

  const std::complex<double> l1 = evs(order[0]);
  const double mag = std::abs(l1);
  if (mag <= 0.0) throw NoStrictDominance("spectrum is identically zero");
  if (std::abs(l1.imag()) > 1e-9 * mag)
    throw NoStrictDominance("dominant eigenvalue is complex");
  if (l1.real() <= 0.0)
    throw NoStrictDominance("dominant eigenvalue is not positive");
  double gap = 0.0;
  if (n >= 2) {
    gap = std::abs(evs(order[1])) / mag;
    if (gap > 1.0 - kEigGapEps)
      throw NoStrictDominance("spectral gap below threshold");
  }

  Vector v0 = es.eigenvectors().col(order[0]).real();
  if (v0.norm() <= 1e-12 * std::sqrt(static_cast<double>(n))) v0 = Vector::Ones(n);

  PowerResult right = power_refine(A, v0, tol, max_iter, "right");
  PowerResult left =
      power_refine(A.transpose(), dominant_start(A.transpose()), tol, max_iter, "left");
  if (std::abs(right.lambda - left.lambda) >
      1e-6 * std::max(1.0, std::abs(right.lambda)))
    throw NoConvergence("left/right eigenvalue estimates disagree");
  if (std::abs(left.v.dot(right.v)) <= 1e-9)
    throw NoStrictDominance("left and right eigenvectors are orthogonal");

  InvariantSplitting s;
  s.lambda = right.lambda;
  s.right = right.v;
  s.left = left.v;
  s.gap = gap;
  return s;
}

Matrix matrix_product(const std::vector<Matrix>& factors) {
  if (factors.empty())
    throw std::invalid_argument("matrix_product: empty factor list");
  const Eigen::Index n = factors.front().rows();
  for (const Matrix& m : factors)
    if (m.rows() != n || m.cols() != n)
      throw DimensionMismatch("matrix_product: inconsistent factor dimensions");
  Matrix acc = Matrix::Identity(n, n);
  for (const Matrix& m : factors) acc = m * acc;
  return acc;
}

}  // namespace conekit
