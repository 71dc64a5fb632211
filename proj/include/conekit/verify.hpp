#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conekit/automaton.hpp"
#include "conekit/cone.hpp"
#include "conekit/linalg.hpp"
#include "conekit/types.hpp"

namespace conekit {

struct InconsistentDimensions : std::runtime_error {
  explicit InconsistentDimensions(const std::string& what)
      : std::runtime_error(what) {}
};

struct MissingCone : std::runtime_error {
  explicit MissingCone(const std::string& what) : std::runtime_error(what) {}
};

// x(k+1) = A_{sigma(k)} x(k) with symbols drawn from an automaton alphabet.
struct SwitchedSystem {
  int dim = 0;
  std::map<std::string, Matrix> matrices;
};

// One cone per automaton state. Cones must be solid where positivity
// verdicts are requested.
using ConeAssignment = std::map<std::string, PolyhedralCone>;

// Quantitative positivity record for one map between two cones: inclusion
// verdict, projective diameter of the image (inf unless Strict), and the
// Birkhoff ratio tanh(D/4) (1 unless Strict, keeping the record total).
struct PositivityCheck {
  Inclusion inclusion = Inclusion::No;
  double diameter = 0.0;
  double gamma = 1.0;
  std::optional<InclusionWitness> witness;  // present iff inclusion == No
};

// A K inside K? Single-cone positivity with contraction data.
PositivityCheck check_positive(const Matrix& A, const PolyhedralCone& K,
                               double tol = kTol, double strict_eps = kStrictEps);

// A K_src inside K_dst: the per-transition building block. The witness (when
// No) carries the violating image point A g, the index of its source
// generator, and the most-violated facet of the target cone.
PositivityCheck check_transition(const Matrix& A, const PolyhedralCone& src,
                                 const PolyhedralCone& dst, double tol = kTol,
                                 double strict_eps = kStrictEps);

struct TransitionCheck {
  Transition transition;
  Inclusion inclusion = Inclusion::No;
  double diameter = 0.0;
  double gamma = 1.0;
  std::optional<InclusionWitness> witness;
};

enum class PathVerdict { NotPathPositive, PathPositive, StrictlyPathPositive };

// Certificate over all automaton transitions. global_gamma is the worst
// transition ratio; the verdict is Strict exactly when every inclusion is
// Strict, which by the Birkhoff bound is exactly when every gamma < 1.
struct PositivityCertificate {
  std::vector<TransitionCheck> transitions;
  double global_gamma = 1.0;
  PathVerdict verdict = PathVerdict::NotPathPositive;
};

// Checks A_sigma K_i inside K_j for every transition i -sigma-> j, in the
// automaton's canonical transition order, concurrently. Throws
// InconsistentDimensions (matrix/cone dimensions, or an alphabet symbol
// without a matrix), MissingCone (state without a cone), NotSolid (assigned
// cone with empty interior).
PositivityCertificate check_path_positive(const SwitchedSystem& sys,
                                          const Automaton& a,
                                          const ConeAssignment& cones,
                                          double tol = kTol,
                                          double strict_eps = kStrictEps);

// Perron-Frobenius data of one automaton cycle: the dominant eigenpair of
// the ordered product along the labels and the induced ray cycle
// ray[k+1] proportional to A_{label k} ray[k].
struct CyclePF {
  std::vector<std::string> states;  // anchor-first state cycle
  std::vector<std::string> labels;
  double eigenvalue = 0.0;
  std::vector<Vector> rays;  // empty when `error` is set
  std::string error;         // eigen-analysis failure, recorded not thrown
  // Max deviation against the rotated cycle anchored at states[1]: angular
  // gap between this cycle's ray 1 and the rotation's ray 0, plus the
  // relative eigenvalue disagreement. NaN when the rotation record is
  // missing or failed.
  double rotation_residual = 0.0;
};

// Eigen-analyzes every simple cycle up to max_len and cross-checks the
// rotation identities. Per-cycle eigen failures are recorded in the result,
// not thrown.
std::vector<CyclePF> cycle_pf(const SwitchedSystem& sys, const Automaton& a,
                              int max_len, double tol = 1e-10);

}  // namespace conekit
