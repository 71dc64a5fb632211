#include "conekit/sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "conekit/hilbert.hpp"

namespace conekit {
namespace {

Vector unit_or_throw(const Vector& v, const char* label) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument(std::string(label) + " must be nonzero and finite");
  }
  return v / n;
}

double angle_between_rays(const Vector& a, const Vector& b) {
  const double c = std::min(1.0, std::abs(a.dot(b)) / (a.norm() * b.norm()));
  return std::acos(c);
}

}  // namespace

TrajectoryPair simulate_pair(const SwitchedSystem& sys, const Automaton& a,
                             const std::optional<ConeAssignment>& cones,
                             const Vector& x0, const Vector& y0, int steps,
                             std::uint64_t seed) {
  const int n = sys.dim;
  if (n <= 0) throw InconsistentDimensions("system dimension must be positive");
  if (x0.size() != n || y0.size() != n) {
    throw DimensionMismatch("simulate_pair: initial states have wrong dimension");
  }
  for (const auto& [sym, A] : sys.matrices) {
    if (A.rows() != n || A.cols() != n) {
      throw InconsistentDimensions("matrix '" + sym + "' does not match dimension");
    }
  }
  if (steps < 0) throw std::invalid_argument("steps must be nonnegative");

  const Automaton::Walk walk = a.random_walk(steps, seed);
  if (cones) {
    for (const auto& q : a.states()) {
      auto it = cones->find(q);
      if (it == cones->end()) throw MissingCone("state '" + q + "' has no cone");
      if (it->second.dim() != n) {
        throw InconsistentDimensions("cone for state '" + q +
                                     "' does not match dimension");
      }
    }
    const PolyhedralCone& K0 = cones->at(walk.states.front());
    if (!(x0.norm() > 0.0) || !(y0.norm() > 0.0) || !K0.contains(x0) ||
        !K0.contains(y0)) {
      throw NotInCone("initial state outside the start cone");
    }
  }

  TrajectoryPair tp;
  tp.symbols = walk.symbols;
  tp.q = walk.states;
  Vector x = unit_or_throw(x0, "x0");
  Vector y = unit_or_throw(y0, "y0");
  double log_scale = 0.0;
  for (int k = 0; k <= steps; ++k) {
    tp.x.push_back(x);
    tp.y.push_back(y);
    tp.log_scale.push_back(log_scale);
    tp.normalized_gap.push_back((x - y).norm());
    if (cones) {
      double d;
      try {
        d = distance(cones->at(walk.states[k]), x, y);
      } catch (const NotInCone&) {
        // A non-strict certificate lets trajectories drift out; record and go on.
        d = std::numeric_limits<double>::quiet_NaN();
      }
      tp.hilbert_d.push_back(d);
    }
    if (k == steps) break;
    auto mit = sys.matrices.find(walk.symbols[k]);
    if (mit == sys.matrices.end()) {
      throw InconsistentDimensions("alphabet symbol '" + walk.symbols[k] +
                                   "' has no matrix");
    }
    const Matrix& A = mit->second;
    Vector xn = A * x;
    Vector yn = A * y;
    const double sx = xn.norm(), sy = yn.norm();
    if (!(sx > 0.0) || !(sy > 0.0)) {
      throw std::runtime_error("trajectory collapsed to zero at step " +
                               std::to_string(k + 1));
    }
    log_scale += std::log(sx);
    x = xn / sx;
    y = yn / sy;
  }
  return tp;
}

double cycle_attractor_check(const SwitchedSystem& sys, const CyclePF& cycle,
                             const Vector& x0, int periods) {
  if (!cycle.error.empty() || cycle.rays.empty()) {
    throw std::invalid_argument("cycle carries no eigen data");
  }
  Vector x = unit_or_throw(x0, "x0");
  if (x.size() != sys.dim || cycle.rays[0].size() != sys.dim) {
    throw DimensionMismatch("cycle_attractor_check: dimension mismatch");
  }
  std::vector<const Matrix*> word;
  for (const auto& sym : cycle.labels) {
    auto it = sys.matrices.find(sym);
    if (it == sys.matrices.end()) {
      throw InconsistentDimensions("alphabet symbol '" + sym + "' has no matrix");
    }
    word.push_back(&it->second);
  }
  if (periods <= 0) return angle_between_rays(x, cycle.rays[0]);

  const std::size_t r = word.size();
  for (int p = 0; p + 1 < periods; ++p) {
    for (std::size_t k = 0; k < r; ++k) {
      Vector xn = *word[k] * x;
      const double s = xn.norm();
      if (!(s > 0.0)) throw std::runtime_error("trajectory collapsed to zero");
      x = xn / s;
    }
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < r; ++k) {
    worst = std::max(worst, angle_between_rays(x, cycle.rays[k]));
    Vector xn = *word[k] * x;
    const double s = xn.norm();
    if (!(s > 0.0)) throw std::runtime_error("trajectory collapsed to zero");
    x = xn / s;
  }
  return worst;
}

}  // namespace conekit
