#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conekit/verify.hpp"

namespace conekit {

// One simulated trajectory pair under a shared admissible switching word.
// States are renormalized every step; log_scale accumulates the discarded
// x-trajectory magnitudes so x_true(k) = |x0| * exp(log_scale[k]) * x[k].
struct TrajectoryPair {
  std::vector<Vector> x, y;            // steps + 1 unit states
  std::vector<std::string> q;          // steps + 1 automaton states
  std::vector<std::string> symbols;    // steps
  std::vector<double> hilbert_d;       // steps + 1; empty when cones absent
  std::vector<double> normalized_gap;  // steps + 1, |x - y| on unit states
  std::vector<double> log_scale;       // steps + 1, log_scale[0] = 0
};

// Runs x and y along the same uniformly random admissible word. With cones,
// x0 and y0 must lie in the start state's cone (NotInCone at step 0) and
// hilbert_d tracks their distance in the current cone; if a later state
// escapes its cone the entry is NaN. Without cones hilbert_d stays empty.
TrajectoryPair simulate_pair(const SwitchedSystem& sys, const Automaton& a,
                             const std::optional<ConeAssignment>& cones,
                             const Vector& x0, const Vector& y0, int steps,
                             std::uint64_t seed);

// Follows `cycle` from x0 for `periods` full traversals and returns the
// worst angular distance between the trajectory ray at each phase of the
// final traversal and the cycle's recorded rays. periods <= 0 compares x0
// against ray 0 only.
double cycle_attractor_check(const SwitchedSystem& sys, const CyclePF& cycle,
                             const Vector& x0, int periods);

}  // namespace conekit
