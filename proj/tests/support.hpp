#pragma once

// Shared helpers for the unit and acceptance suites: seeded random cones,
// interior samplers, and independent oracles the implementations are
// checked against.

#include <cmath>
#include <random>
#include <vector>

#include "conekit/cone.hpp"
#include "conekit/types.hpp"

namespace testsupport {

using conekit::Matrix;
using conekit::PolyhedralCone;
using conekit::Vector;

inline Vector random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (;;) {
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    const double nv = v.norm();
    if (nv > 1e-6) return v / nv;
  }
}

// Positive-orthant Hilbert distance, computed from the classical coordinate
// formula rather than facet ratios: log max_{i,j} (x_i y_j)/(x_j y_i).
// Serves as the independent oracle for the general facet-based routine.
inline double orthant_hilbert_oracle(const Vector& x, const Vector& y) {
  double best = 0.0;
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < x.size(); ++j) {
      const double r = (x(i) * y(j)) / (x(j) * y(i));
      best = std::max(best, std::log(r));
    }
  return best;
}

// Strictly positive random vector; keeps orthant-based oracles away from the
// boundary.
inline Vector random_positive(std::mt19937_64& rng, int n, double lo = 0.1,
                              double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

// Random solid pointed cone: rays scattered inside an acute cap around a
// random axis (cap half-angle < 45 degrees, so pointedness is structural).
// Redraws until the rays span R^n.
inline PolyhedralCone random_cone(std::mt19937_64& rng, int n, int rays) {
  for (;;) {
    const Vector axis = random_unit(rng, n);
    std::vector<Vector> g;
    std::uniform_real_distribution<double> u(0.0, 0.75);
    for (int i = 0; i < rays; ++i) {
      Vector p = random_unit(rng, n);
      p -= p.dot(axis) * axis;
      const double np = p.norm();
      if (np > 1e-9) p /= np;
      g.push_back((axis + u(rng) * p).normalized());
    }
    PolyhedralCone K = PolyhedralCone::from_generators(g);
    if (K.is_solid()) return K;
  }
}

// Random cone strictly inside the positive orthant; safe under
// positive-entry matrix images.
inline PolyhedralCone random_positive_cone(std::mt19937_64& rng, int n,
                                           int rays) {
  for (;;) {
    std::vector<Vector> g;
    for (int i = 0; i < rays; ++i) g.push_back(random_positive(rng, n, 0.1, 1.0));
    PolyhedralCone K = PolyhedralCone::from_generators(g);
    if (K.is_solid()) return K;
  }
}

// Strict interior point: every extreme ray enters with a bounded-away
// positive weight.
inline Vector interior_point(std::mt19937_64& rng, const PolyhedralCone& K) {
  std::uniform_real_distribution<double> u(0.3, 1.0);
  Vector x = Vector::Zero(K.dim());
  for (const Vector& g : K.generators()) x += u(rng) * g;
  return x;
}

inline Matrix random_positive_matrix(std::mt19937_64& rng, int n,
                                     double lo = 0.1, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = u(rng);
  return A;
}

// Order-free ray-set comparison: every vector of a matches one of b within
// an angular tolerance, and vice versa.
inline bool same_ray_set(const std::vector<Vector>& a, const std::vector<Vector>& b,
                         double tol = 1e-7) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Vector& va : a) {
    bool found = false;
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (va.normalized().dot(b[j].normalized()) >= 1.0 - tol) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

inline Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

inline Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace testsupport
