#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conekit/cone.hpp"
#include "conekit/linalg.hpp"
#include "conekit/types.hpp"

namespace conekit {

// A dominant eigenvector of one matrix lies on the invariant hyperplane of
// another (or a matrix has no invariant splitting at all): no common
// contracting cone can exist.
struct BasicTestFailed : std::runtime_error {
  BasicTestFailed(const std::string& what, int first_index, int second_index)
      : std::runtime_error(what), first(first_index), second(second_index) {}
  int first;   // index of the matrix contributing the eigenvector
  int second;  // index of the matrix whose hyperplane is hit; -1 if unary
};

struct ParallelPoints : std::runtime_error {
  explicit ParallelPoints(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateSigns : std::runtime_error {
  explicit DegenerateSigns(const std::string& what) : std::runtime_error(what) {}
};

struct SearchConfig {
  double gamma = 0.9;          // target contraction ratio, in (0,1)
  int seed_depth = 2;          // products of length <= depth seed the hull
  int max_iters = 200;
  double tol = kTol;
  double strict_eps = kStrictEps;
  double growth_eps = 1e-9;    // generator sets closer than this stagnate
  bool enable_probes = true;   // verified widening candidates on stagnation
  bool enable_ladder = true;   // retry stalled inflation with smaller rho
  bool keep_iterates = false;  // record the cone sequence (testing aid)
};

enum class SearchStatus {
  FoundGammaContracting,
  FoundDeltaInvariant,
  No,
  Inconclusive,
};

struct IterationRecord {
  int iter = 0;
  int generators = 0;
  double contraction = 1.0;  // max per-matrix ratio; 1 unless all strict
  int level = 0;             // inflation level: 0 is the target radius
  std::string note;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::Inconclusive;
  std::optional<PolyhedralCone> cone;  // present on either Found status
  std::optional<double> delta;         // present on FoundDeltaInvariant
  double gamma_achieved = 1.0;         // max per-matrix ratio on `cone`
  int iterations = 0;
  std::vector<IterationRecord> trace;
  std::string reason;
  std::string warning;                    // irreducibility heuristic note
  std::optional<PolyhedralCone> witness_cone;  // refuting inner bound (No)
  int witness_index = -1;  // matrix whose invariant hyperplane is straddled
  std::vector<PolyhedralCone> iterates;  // filled when keep_iterates
};

// Eigen-analyzes every matrix and requires each dominant eigenvector to
// avoid every invariant hyperplane: |w_j . v_i| > tol for all pairs.
std::vector<InvariantSplitting> basic_test(const std::vector<Matrix>& mats,
                                           double tol = kTol);

// Flips each dominant eigenvector onto the positive side of the first
// matrix's invariant hyperplane.
std::vector<Vector> orient(const std::vector<InvariantSplitting>& splittings);

// Conic hull of all products of length <= depth applied to the oriented
// eigenvectors; the minimal inner bound every common invariant cone must
// contain. NotPointed propagates.
PolyhedralCone seed_cone(const std::vector<Matrix>& mats,
                         const std::vector<Vector>& oriented, int depth,
                         double tol = kTol);

// The point y + (y - x)/(rho - 1): where the segment from x through y exits
// any cone that contracts x, y to within radius log(rho). Requires rho > 1
// and non-parallel points.
Vector inflate_point(const Vector& x, const Vector& y, double rho,
                     double tol = kTol);

// lambda with w . (y - lambda x) = 0, requiring w . x and w . y on the same
// strict side (DegenerateSigns otherwise).
double scale_to_hyperplane(const Vector& x, const Vector& y, const Vector& w,
                           double tol = kTol);

// Grows an inner bound from the oriented eigenvectors by forward images and
// boundary inflation until it verifies as gamma-contracting, a refutation
// appears, or growth stalls. Stalls fall back to verified widening probes
// and then to smaller inflation radii; refutations are only ever issued
// from the basic test, a non-pointed hull at the target radius, or an
// inner bound straddling an invariant hyperplane at the target radius.
SearchOutcome find_contracting_cone(const std::vector<Matrix>& mats,
                                    const SearchConfig& cfg);

}  // namespace conekit
