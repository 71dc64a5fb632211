#pragma once

#include <optional>
#include <vector>

#include "conekit/types.hpp"

namespace conekit {

struct NotPointed : std::runtime_error {
  explicit NotPointed(const std::string& what) : std::runtime_error(what) {}
};

struct NotSolid : std::runtime_error {
  explicit NotSolid(const std::string& what) : std::runtime_error(what) {}
};

// Closed convex polyhedral cone, kept in both representations:
//   K = cone(generators) = { x : a^T x >= 0 for every facet normal a }.
// Invariants: generators are unit, pairwise non-parallel, and irredundant
// (each is an extreme ray); facet normals are unit, inward, irredundant.
// Cones are always pointed (K contains no line); they need not be solid.
// Non-solid cones carry +/- normal pairs spanning the orthogonal complement
// of their linear span, so the facet description stays exact.
class PolyhedralCone {
 public:
  // Minimal V-representation + derived facets from a generating set.
  // Rays must be nonzero; throws NotPointed when cone(rays) contains a line.
  static PolyhedralCone from_generators(const std::vector<Vector>& rays,
                                        double tol = kTol);

  // Minimal H-representation + derived generators from inward normals.
  // Throws NotSolid when the normals fail to span (the cone has empty
  // interior yet is described only by inequalities), NotPointed when the
  // intersection contains a line.
  static PolyhedralCone from_facets(const std::vector<Vector>& normals,
                                    double tol = kTol);

  int dim() const { return dim_; }
  const std::vector<Vector>& generators() const { return generators_; }
  const std::vector<Vector>& facets() const { return facets_; }

  // True when the generators span R^dim.
  bool is_solid(double tol = kTol) const;

  // min_a a^T x / |x| over facet normals; membership iff >= -tol.
  bool contains(const Vector& x, double tol = kTol) const;

  // Strict membership with margin: every facet value exceeds eps * |x|.
  // Non-solid cones have no interior points.
  bool contains_interior(const Vector& x, double eps = kStrictEps) const;

  // True when w^T g takes both strict signs (> tol, < -tol) across the
  // generators, i.e. the hyperplane w^T x = 0 cuts through the cone.
  bool meets_hyperplane(const Vector& w, double tol = kTol) const;

  // Smallest facet value of x against unit x: min_a a^T x / |x|.
  // Positive strictly inside, ~0 on the boundary, negative outside.
  double margin(const Vector& x) const;

 private:
  PolyhedralCone() = default;
  int dim_ = 0;
  std::vector<Vector> generators_;
  std::vector<Vector> facets_;
};

enum class Inclusion { No, NonStrict, Strict };

// Refutation data for a failed inclusion: the first inner generator that
// leaves the outer cone, the outer facet it violates most, and the facet
// value (negative). Indices refer to the stored minimal representations.
struct InclusionWitness {
  int generator_index = -1;
  int facet_index = -1;
  Vector generator;
  Vector facet;
  double margin = 0.0;
};

struct InclusionResult {
  Inclusion verdict = Inclusion::No;
  std::optional<InclusionWitness> witness;  // present iff verdict == No
};

// Tests inner <= outer by generator-against-facet evaluation: Strict when
// every inner generator clears every outer facet by strict_eps (relative),
// NonStrict when all values are >= -tol, else No with a witness.
InclusionResult includes(const PolyhedralCone& outer, const PolyhedralCone& inner,
                         double tol = kTol, double strict_eps = kStrictEps);

// Forward image cone(A g_1, ..., A g_m). Images that collapse to zero are
// dropped; NotPointed propagates when the image folds onto a line.
PolyhedralCone image(const PolyhedralCone& K, const Matrix& A, double tol = kTol);

// Conic hull of a union: cone(all generators). NotPointed propagates.
PolyhedralCone hull_union(const std::vector<PolyhedralCone>& cones,
                          double tol = kTol);

}  // namespace conekit
