#pragma once

#include "conekit/cone.hpp"
#include "conekit/types.hpp"

namespace conekit {

struct NotInCone : std::runtime_error {
  explicit NotInCone(const std::string& what) : std::runtime_error(what) {}
};

struct ImageNotContained : std::runtime_error {
  explicit ImageNotContained(const std::string& what) : std::runtime_error(what) {}
};

// Extremal facet ratios of x over y inside K:
//   upper = max over facets a of (a^T x)/(a^T y), +inf when a^T y = 0 < a^T x;
//   lower = min over facets with a^T y > 0, ratio floored at 0 when a^T x = 0.
// These are the inf/sup scalings lambda with lambda*y - x in K resp.
// x - mu*y in K, specialized to polyhedral facets.
struct RatioBounds {
  double upper = 0.0;  // may be +inf
  double lower = 0.0;
};

// Throws NotInCone unless x, y lie in K and are numerically nonzero.
RatioBounds ratio_bounds(const PolyhedralCone& K, const Vector& x, const Vector& y,
                         double tol = kTol);

// Hilbert projective distance log(upper/lower); +inf when upper = inf or
// lower = 0. Symmetric, scale-invariant, zero exactly on shared rays.
double distance(const PolyhedralCone& K, const Vector& x, const Vector& y,
                double tol = kTol);

// Oscillation upper - lower; finite only when upper is.
double oscillation(const PolyhedralCone& K, const Vector& x, const Vector& y,
                   double tol = kTol);

// Projective diameter of A K_src measured inside K_dst: the largest pairwise
// distance between extreme rays of the image cone. Requires the image to be
// contained in K_dst (throws ImageNotContained); +inf whenever the image
// touches K_dst's boundary with more than one ray.
double projective_diameter(const Matrix& A, const PolyhedralCone& src,
                           const PolyhedralCone& dst, double tol = kTol);

// Single-cone convenience: diameter of A K inside K.
double projective_diameter(const Matrix& A, const PolyhedralCone& K,
                           double tol = kTol);

// Birkhoff bound gamma = tanh(D/4); 0 at D = 0, 1 at D = +inf.
double contraction_ratio(double diameter);

// Inflation parameter rho = exp(4 artanh gamma) = ((1+gamma)/(1-gamma))^2,
// the largest image spread exp(D) compatible with contraction ratio gamma.
// Requires 0 < gamma < 1.
double rho_for_gamma(double gamma);

}  // namespace conekit
