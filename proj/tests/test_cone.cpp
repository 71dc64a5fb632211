#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conekit/cone.hpp"
#include "support.hpp"

using namespace conekit;
using testsupport::same_ray_set;
using testsupport::vec2;
using testsupport::vec3;

namespace {

PolyhedralCone wide_wedge() {
  return PolyhedralCone::from_generators({vec2(1, 1), vec2(1, -1)});
}

PolyhedralCone narrow_wedge() {
  return PolyhedralCone::from_generators({vec2(4, 1), vec2(4, -1)});
}

PolyhedralCone orthant(int n) {
  std::vector<Vector> e;
  for (int i = 0; i < n; ++i) e.push_back(Vector::Unit(n, i));
  return PolyhedralCone::from_generators(e);
}

}  // namespace

TEST_CASE("symmetric wedge is self-dual") {
  const PolyhedralCone K = wide_wedge();
  CHECK(same_ray_set(K.facets(), {vec2(1, 1).normalized(), vec2(1, -1).normalized()}));
  CHECK(same_ray_set(K.generators(),
                     {vec2(1, 1).normalized(), vec2(1, -1).normalized()}));
  CHECK(K.is_solid());
}

TEST_CASE("interior ray is pruned") {
  const PolyhedralCone K =
      PolyhedralCone::from_generators({vec2(1, 0), vec2(0, 1), vec2(1, 1)});
  CHECK(same_ray_set(K.generators(), {vec2(1, 0), vec2(0, 1)}));
  CHECK(same_ray_set(K.facets(), {vec2(1, 0), vec2(0, 1)}));
}

TEST_CASE("opposite rays are not pointed") {
  CHECK_THROWS_AS(PolyhedralCone::from_generators({vec2(1, 0), vec2(-1, 0)}),
                  NotPointed);
}

TEST_CASE("half-plane spans are not pointed") {
  CHECK_THROWS_AS(
      PolyhedralCone::from_generators({vec2(1, 0), vec2(0, 1), vec2(-1, 0)}),
      NotPointed);
  CHECK_THROWS_AS(PolyhedralCone::from_generators(
                      {vec3(1, 0, 0), vec3(-1, 1, 0), vec3(-1, -1, 0)}),
                  NotPointed);
}

TEST_CASE("facet constructor matches hand duality") {
  const PolyhedralCone K = PolyhedralCone::from_facets({vec2(1, 1), vec2(1, -1)});
  CHECK(same_ray_set(K.generators(),
                     {vec2(1, 1).normalized(), vec2(1, -1).normalized()}));
}

TEST_CASE("orthant is self-dual in all tested dimensions") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<Vector> e;
    for (int i = 0; i < n; ++i) e.push_back(Vector::Unit(n, i));
    const PolyhedralCone K = PolyhedralCone::from_facets(e);
    CHECK(same_ray_set(K.generators(), e));
    CHECK(same_ray_set(K.facets(), e));
  }
}

TEST_CASE("degenerate slab has no interior") {
  CHECK_THROWS_AS(PolyhedralCone::from_facets({vec2(1, 0), vec2(-1, 0)}),
                  NotSolid);
  // Adding a third constraint pins a ray: still empty interior.
  CHECK_THROWS_AS(
      PolyhedralCone::from_facets({vec2(1, 0), vec2(-1, 0), vec2(0, 1)}),
      NotSolid);
}

TEST_CASE("half-plane facet system is not pointed") {
  CHECK_THROWS_AS(PolyhedralCone::from_facets({vec2(1, 0)}), NotPointed);
}

TEST_CASE("membership against a narrow wedge") {
  const PolyhedralCone K = narrow_wedge();  // |x2| <= x1/4
  CHECK(K.contains(vec2(5, 1)));
  CHECK(K.contains_interior(vec2(5, 1)));
  CHECK(K.contains(vec2(4, 1)));
  CHECK_FALSE(K.contains_interior(vec2(4, 1)));
  CHECK_FALSE(K.contains(vec2(1, 2)));
  CHECK(K.contains(Vector::Zero(2)));
  CHECK_FALSE(K.contains_interior(Vector::Zero(2)));
}

TEST_CASE("orthant boundary is contained but not interior") {
  const PolyhedralCone K = orthant(2);
  CHECK(K.contains(vec2(1, 0)));
  CHECK_FALSE(K.contains_interior(vec2(1, 0)));
  CHECK(K.contains_interior(vec2(1, 1)));
}

TEST_CASE("image maps generators") {
  const PolyhedralCone K = wide_wedge();
  const PolyhedralCone img = image(K, testsupport::mat2(5, 0, 0, 1));
  CHECK(same_ray_set(img.generators(),
                     {vec2(5, 1).normalized(), vec2(5, -1).normalized()}));

  const PolyhedralCone same = image(K, Matrix::Identity(2, 2));
  CHECK(same_ray_set(same.generators(), K.generators()));
}

TEST_CASE("rank-deficient image degrades to a ray, not an error") {
  const PolyhedralCone img = image(orthant(2), testsupport::mat2(1, 0, 0, 0));
  CHECK(img.generators().size() == 1);
  CHECK_FALSE(img.is_solid());
  CHECK(img.contains(vec2(3, 0)));
  CHECK_FALSE(img.contains(vec2(3, 0.1)));
}

TEST_CASE("folded image still raises NotPointed") {
  // [[0,1],[0,-1]] sends the wedge corners to (1,-1) and (-1,1): a line.
  CHECK_THROWS_AS(image(wide_wedge(), testsupport::mat2(0, 1, 0, -1)),
                  NotPointed);
}

TEST_CASE("inclusion verdicts on nested wedges") {
  const PolyhedralCone wide = wide_wedge();
  const PolyhedralCone narrow = narrow_wedge();

  CHECK(includes(wide, narrow).verdict == Inclusion::Strict);
  CHECK(includes(wide, wide).verdict == Inclusion::NonStrict);

  const InclusionResult no = includes(narrow, wide);
  CHECK(no.verdict == Inclusion::No);
  REQUIRE(no.witness.has_value());
  CHECK(no.witness->margin < -kTol);
  CHECK(no.witness->facet.dot(no.witness->generator) ==
        doctest::Approx(no.witness->margin).epsilon(1e-12));
  CHECK_FALSE(narrow.contains(no.witness->generator));
  CHECK(no.witness->generator_index >= 0);
  CHECK(no.witness->facet_index >= 0);
}

TEST_CASE("strict inclusion after a contracting image") {
  const InclusionResult r =
      includes(narrow_wedge(), image(wide_wedge(), testsupport::mat2(5, 0, 0, 1)));
  CHECK(r.verdict == Inclusion::Strict);
}

TEST_CASE("hull union collapses nested cones and rejects lines") {
  const PolyhedralCone h = hull_union({wide_wedge(), narrow_wedge()});
  CHECK(same_ray_set(h.generators(), wide_wedge().generators()));

  std::vector<Vector> neg = {vec2(-1, 0), vec2(0, -1)};
  CHECK_THROWS_AS(hull_union({orthant(2), PolyhedralCone::from_generators(neg)}),
                  NotPointed);
}

TEST_CASE("hyperplane crossing by sign straddle or tangency") {
  const PolyhedralCone K = orthant(2);
  CHECK_FALSE(K.meets_hyperplane(vec2(1, 1)));
  CHECK(K.meets_hyperplane(vec2(1, -1)));  // e1, e2 on opposite sides
  CHECK(K.meets_hyperplane(vec2(0, 1)));   // e1 lies inside the plane
  CHECK(wide_wedge().meets_hyperplane(vec2(0, 1)));
}

TEST_CASE("mismatched dimensions are rejected") {
  CHECK_THROWS_AS(includes(orthant(2), orthant(3)), DimensionMismatch);
  CHECK_THROWS_AS(orthant(2).contains(vec3(1, 1, 1)), DimensionMismatch);
  CHECK_THROWS_AS(image(orthant(3), testsupport::mat2(1, 0, 0, 1)),
                  DimensionMismatch);
}

TEST_CASE("zero and empty inputs are rejected") {
  CHECK_THROWS_AS(PolyhedralCone::from_generators({}), std::invalid_argument);
  CHECK_THROWS_AS(PolyhedralCone::from_generators({Vector::Zero(2)}),
                  std::invalid_argument);
}

TEST_CASE("pyramid facets come out of the double description") {
  // Square pyramid around +z.
  const PolyhedralCone K = PolyhedralCone::from_generators(
      {vec3(1, 1, 1), vec3(1, -1, 1), vec3(-1, 1, 1), vec3(-1, -1, 1)});
  CHECK(K.generators().size() == 4);
  CHECK(K.facets().size() == 4);
  CHECK(same_ray_set(K.facets(),
                     {vec3(1, 0, 1).normalized(), vec3(-1, 0, 1).normalized(),
                      vec3(0, 1, 1).normalized(), vec3(0, -1, 1).normalized()}));
  CHECK(K.contains_interior(vec3(0, 0, 1)));

  // And back: the facet system reproduces the generators.
  const PolyhedralCone K2 = PolyhedralCone::from_facets(K.facets());
  CHECK(same_ray_set(K2.generators(), K.generators()));
}

TEST_CASE("redundant ray inside a 3-D orthant is removed") {
  const PolyhedralCone K = PolyhedralCone::from_generators(
      {vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1), vec3(1, 1, 1)});
  CHECK(K.generators().size() == 3);
}

TEST_CASE("round-trip through facets preserves random cones") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      const PolyhedralCone K = testsupport::random_cone(rng, n, n + 3);
      const PolyhedralCone back = PolyhedralCone::from_facets(K.facets());
      CHECK(same_ray_set(back.generators(), K.generators(), 1e-6));
    }
  }
}

TEST_CASE("inclusion is transitive on nested random cones") {
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      const PolyhedralCone K3 = testsupport::random_cone(rng, n, n + 3);
      std::vector<Vector> mid, inner;
      for (int i = 0; i < n + 2; ++i)
        mid.push_back(testsupport::interior_point(rng, K3));
      const PolyhedralCone K2 = PolyhedralCone::from_generators(mid);
      for (int i = 0; i < n + 2; ++i)
        inner.push_back(testsupport::interior_point(rng, K2));
      const PolyhedralCone K1 = PolyhedralCone::from_generators(inner);
      CHECK(includes(K2, K1).verdict != Inclusion::No);
      CHECK(includes(K3, K2).verdict != Inclusion::No);
      CHECK(includes(K3, K1).verdict != Inclusion::No);
    }
  }
}

TEST_CASE("image respects composition") {
  std::mt19937_64 rng(17);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      const PolyhedralCone K = testsupport::random_positive_cone(rng, n, n + 2);
      const Matrix A = testsupport::random_positive_matrix(rng, n);
      const Matrix B = testsupport::random_positive_matrix(rng, n);
      const PolyhedralCone lhs = image(image(K, A), B);
      const PolyhedralCone rhs = image(K, Matrix(B * A));
      CHECK(same_ray_set(lhs.generators(), rhs.generators(), 1e-6));
    }
  }
}

TEST_CASE("pointedness agrees with the 2-D angular brute force") {
  // Brute force: a planar ray set is pointed iff some open half-plane
  // contains all of it, decided here by a dense direction sweep. The same
  // sets are also lifted into z = 0 in R^3 so the general feasibility-based
  // pointedness path must agree with the planar specialization.
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> width(0.4 * std::numbers::pi,
                                               1.6 * std::numbers::pi);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double start = 2.0 * std::numbers::pi * u01(rng);
    const double span = width(rng);
    std::vector<double> ang = {start, start + span};
    for (int i = 0; i < 4; ++i) ang.push_back(start + span * u01(rng));
    std::vector<Vector> rays;
    std::vector<Vector> lifted;
    for (double a : ang) {
      rays.push_back(vec2(std::cos(a), std::sin(a)));
      lifted.push_back(vec3(std::cos(a), std::sin(a), 0.0));
    }

    double best = -1.0;
    for (int k = 0; k < 20000; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / 20000;
      double worst = 1.0;
      for (double a : ang) worst = std::min(worst, std::cos(a - theta));
      best = std::max(best, worst);
    }
    if (std::abs(best) < 1e-3) continue;  // too close to the half-plane edge
    const bool pointed_expected = best > 0.0;

    bool pointed = true;
    try {
      PolyhedralCone::from_generators(rays);
    } catch (const NotPointed&) {
      pointed = false;
    }
    CHECK(pointed == pointed_expected);

    bool pointed3d = true;
    try {
      PolyhedralCone::from_generators(lifted);
    } catch (const NotPointed&) {
      pointed3d = false;
    }
    CHECK(pointed3d == pointed_expected);
  }
}

TEST_CASE("facets are tight on enough generators") {
  std::mt19937_64 rng(23);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const PolyhedralCone K = testsupport::random_cone(rng, n, n + 3);
      for (const Vector& a : K.facets()) {
        Matrix tight(n, static_cast<Eigen::Index>(K.generators().size()));
        Eigen::Index cols = 0;
        for (const Vector& g : K.generators())
          if (std::abs(a.dot(g)) <= 1e-7) tight.col(cols++) = g;
        REQUIRE(cols >= 1);
        Eigen::ColPivHouseholderQR<Matrix> qr(tight.leftCols(cols));
        qr.setThreshold(1e-9);
        CHECK(qr.rank() >= n - 1);
      }
    }
  }
}
