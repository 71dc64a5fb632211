#include "conekit/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conekit/parallel.hpp"

namespace conekit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

RatioBounds ratio_bounds(const PolyhedralCone& K, const Vector& x, const Vector& y,
                         double tol) {
  if (x.size() != K.dim() || y.size() != K.dim())
    throw DimensionMismatch("ratio_bounds: vector dimension mismatch");
  const double nx = x.norm(), ny = y.norm();
  if (nx <= 1e-300 || ny <= 1e-300)
    throw NotInCone("ratio_bounds: zero vector");
  if (!K.contains(x, tol) || !K.contains(y, tol))
    throw NotInCone("ratio_bounds: point outside the cone");

  RatioBounds rb{0.0, kInf};
  for (const Vector& a : K.facets()) {
    const double px = std::max(a.dot(x), 0.0);  // clamp membership noise
    const double py = a.dot(y);
    if (py <= tol * ny) {
      if (px > tol * nx) rb.upper = kInf;  // y on the facet, x off it
      continue;                            // both tight: facet carries no ratio
    }
    const double r = (px <= tol * nx ? 0.0 : px) / py;
    rb.upper = std::max(rb.upper, r);
    rb.lower = std::min(rb.lower, r);
  }
  if (rb.lower == kInf)
    throw NotInCone("ratio_bounds: no facet separates the pair");  // y ~ 0 in K
  return rb;
}

double distance(const PolyhedralCone& K, const Vector& x, const Vector& y,
                double tol) {
  const RatioBounds rb = ratio_bounds(K, x, y, tol);
  if (std::isinf(rb.upper) || rb.lower <= 0.0) return kInf;
  return std::max(0.0, std::log(rb.upper / rb.lower));
}

double oscillation(const PolyhedralCone& K, const Vector& x, const Vector& y,
                   double tol) {
  const RatioBounds rb = ratio_bounds(K, x, y, tol);
  if (std::isinf(rb.upper)) return kInf;
  return std::max(0.0, rb.upper - rb.lower);
}

double projective_diameter(const Matrix& A, const PolyhedralCone& src,
                           const PolyhedralCone& dst, double tol) {
  if (A.rows() != A.cols() || static_cast<int>(A.cols()) != src.dim() ||
      src.dim() != dst.dim())
    throw DimensionMismatch("projective_diameter: dimension mismatch");

  // Check containment on the raw mapped generators before building the image
  // cone, so a folded (non-pointed) image surfaces as ImageNotContained.
  const double scale = std::max(1e-300, A.cwiseAbs().maxCoeff());
  std::vector<Vector> mapped;
  for (const Vector& g : src.generators()) {
    Vector y = A * g;
    if (y.norm() <= tol * scale) continue;
    if (!dst.contains(y, tol))
      throw ImageNotContained("projective_diameter: image leaves the target cone");
    mapped.push_back(std::move(y));
  }
  if (mapped.empty())
    throw ImageNotContained("projective_diameter: image collapsed to the origin");

  const PolyhedralCone img = PolyhedralCone::from_generators(mapped, tol);
  const auto& gens = img.generators();
  const int m = static_cast<int>(gens.size());
  if (m == 1) return 0.0;

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);

  std::vector<double> d(pairs.size());
  parallel_for(static_cast<int>(pairs.size()), [&](int p) {
    const auto [i, j] = pairs[static_cast<size_t>(p)];
    d[static_cast<size_t>(p)] =
        distance(dst, gens[static_cast<size_t>(i)], gens[static_cast<size_t>(j)], tol);
  });
  return *std::max_element(d.begin(), d.end());
}

double projective_diameter(const Matrix& A, const PolyhedralCone& K, double tol) {
  return projective_diameter(A, K, K, tol);
}

double contraction_ratio(double diameter) {
  if (diameter < 0.0)
    throw std::invalid_argument("contraction_ratio: negative diameter");
  if (std::isinf(diameter)) return 1.0;
  return std::tanh(diameter / 4.0);
}

double rho_for_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("rho_for_gamma: gamma must lie in (0,1)");
  const double q = (1.0 + gamma) / (1.0 - gamma);
  return q * q;
}

}  // namespace conekit
