#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conekit/hilbert.hpp"
#include "conekit/verify.hpp"
#include "support.hpp"

using namespace conekit;
using namespace testsupport;

namespace {

// Two-state loop: q0 -0-> q1, q1 -0-> q1, q1 -1-> q0.
Automaton loop_automaton() {
  return Automaton::validate(
      {"q0", "q1"}, {"0", "1"},
      {{"q0", "0", "q1"}, {"q1", "0", "q1"}, {"q1", "1", "q0"}});
}

Automaton one_state(const std::vector<std::string>& alphabet) {
  std::vector<Transition> ts;
  for (const auto& s : alphabet) ts.push_back({"q", s, "q"});
  return Automaton::validate({"q"}, alphabet, ts);
}

SwitchedSystem diag_pair() {
  SwitchedSystem sys;
  sys.dim = 2;
  sys.matrices["0"] = mat2(5, 0, 0, 1);
  sys.matrices["1"] = mat2(1, 0, 0, 3);
  return sys;
}

ConeAssignment wedge_cones() {
  return {{"q0", PolyhedralCone::from_generators({vec2(1, 1), vec2(1, -1)})},
          {"q1", PolyhedralCone::from_generators({vec2(4, 1), vec2(4, -1)})}};
}

PolyhedralCone orthant(int n) {
  std::vector<Vector> e;
  for (int i = 0; i < n; ++i) e.push_back(Vector::Unit(n, i));
  return PolyhedralCone::from_generators(e);
}

}  // namespace

TEST_CASE("single-matrix positivity verdicts on the orthant") {
  PolyhedralCone K = orthant(2);

  // Invariant but axis-preserving: boundary stays on the boundary.
  PositivityCheck weak = check_positive(mat2(5, 0, 0, 1), K);
  CHECK(weak.inclusion == Inclusion::NonStrict);
  CHECK(std::isinf(weak.diameter));
  CHECK(weak.gamma == 1.0);
  CHECK_FALSE(weak.witness.has_value());

  // Strictly positive matrix: finite diameter, tanh(D/4) ratio.
  PositivityCheck strong = check_positive(mat2(2, 1, 1, 2), K);
  CHECK(strong.inclusion == Inclusion::Strict);
  CHECK(strong.diameter == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(strong.gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // Rotation by pi/2 throws a generator out; the witness pins it down.
  PositivityCheck no = check_positive(mat2(0, -1, 1, 0), K);
  CHECK(no.inclusion == Inclusion::No);
  CHECK(no.gamma == 1.0);
  REQUIRE(no.witness.has_value());
  const InclusionWitness& w = *no.witness;
  CHECK(w.margin < 0.0);
  CHECK_FALSE(K.contains(w.generator));
  CHECK(w.facet.dot(w.generator) / w.generator.norm() ==
        doctest::Approx(w.margin).epsilon(1e-12));
}

TEST_CASE("two-cone loop certificate with frozen contraction ratios") {
  PositivityCertificate cert =
      check_path_positive(diag_pair(), loop_automaton(), wedge_cones());
  CHECK(cert.verdict == PathVerdict::StrictlyPathPositive);
  REQUIRE(cert.transitions.size() == 3);

  // Canonical transition order: (q0,0,q1), (q1,0,q1), (q1,1,q0).
  CHECK(cert.transitions[0].transition.from == "q0");
  CHECK(cert.transitions[1].transition.from == "q1");
  CHECK(cert.transitions[1].transition.symbol == "0");
  CHECK(cert.transitions[2].transition.symbol == "1");

  for (const auto& tc : cert.transitions) CHECK(tc.inclusion == Inclusion::Strict);
  CHECK(cert.transitions[0].diameter == doctest::Approx(std::log(81.0)).epsilon(1e-12));
  CHECK(cert.transitions[0].gamma == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(cert.transitions[1].diameter == doctest::Approx(std::log(2.25)).epsilon(1e-12));
  CHECK(cert.transitions[1].gamma == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(cert.transitions[2].diameter == doctest::Approx(std::log(49.0)).epsilon(1e-12));
  CHECK(cert.transitions[2].gamma == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(cert.global_gamma == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("no common cone for the diagonal pair: refutation witness") {
  // Forcing one shared cone on both matrices must fail: the wedge is invariant
  // for the first matrix but the second pushes a corner out.
  SwitchedSystem sys = diag_pair();
  Automaton a = one_state({"0", "1"});
  ConeAssignment cones{{"q", PolyhedralCone::from_generators({vec2(1, 1), vec2(1, -1)})}};
  PositivityCertificate cert = check_path_positive(sys, a, cones);
  CHECK(cert.verdict == PathVerdict::NotPathPositive);
  CHECK(cert.global_gamma == 1.0);
  bool saw_witness = false;
  for (const auto& tc : cert.transitions) {
    if (tc.inclusion == Inclusion::No) {
      REQUIRE(tc.witness.has_value());
      saw_witness = true;
      // The witness point is the mapped source generator.
      const Matrix& A = sys.matrices.at(tc.transition.symbol);
      Vector mapped = A * cones.at(tc.transition.from).generators()[tc.witness->generator_index];
      CHECK((mapped - tc.witness->generator).norm() < 1e-12);
      CHECK_FALSE(cones.at(tc.transition.to).contains(tc.witness->generator));
    }
  }
  CHECK(saw_witness);
}

TEST_CASE("mixed verdict stays PathPositive with unit global gamma") {
  SwitchedSystem sys;
  sys.dim = 2;
  sys.matrices["a"] = mat2(2, 1, 1, 2);  // strict
  sys.matrices["b"] = mat2(5, 0, 0, 1);  // invariant only
  PositivityCertificate cert = check_path_positive(
      sys, one_state({"a", "b"}), {{"q", orthant(2)}});
  CHECK(cert.verdict == PathVerdict::PathPositive);
  CHECK(cert.global_gamma == 1.0);
  for (const auto& tc : cert.transitions) {
    CHECK((tc.inclusion == Inclusion::Strict) == (tc.gamma < 1.0));
  }
}

TEST_CASE("validation errors") {
  SwitchedSystem sys = diag_pair();
  Automaton a = loop_automaton();
  ConeAssignment cones = wedge_cones();

  ConeAssignment missing = cones;
  missing.erase("q1");
  CHECK_THROWS_AS(check_path_positive(sys, a, missing), MissingCone);

  SwitchedSystem nomat = sys;
  nomat.matrices.erase("1");
  CHECK_THROWS_AS(check_path_positive(nomat, a, cones), InconsistentDimensions);

  SwitchedSystem bad = sys;
  bad.matrices["0"] = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(check_path_positive(bad, a, cones), InconsistentDimensions);

  ConeAssignment flat = cones;
  flat.at("q1") = PolyhedralCone::from_generators({vec2(1, 0)});
  CHECK_THROWS_AS(check_path_positive(sys, a, flat), NotSolid);

  ConeAssignment wrongdim = cones;
  wrongdim.at("q1") = PolyhedralCone::from_generators(
      {Vector::Unit(3, 0), Vector::Unit(3, 1), Vector::Unit(3, 2)});
  CHECK_THROWS_AS(check_path_positive(sys, a, wrongdim), InconsistentDimensions);
}

TEST_CASE("one-state certificate reduces to per-matrix checks") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    SwitchedSystem sys;
    sys.dim = n;
    sys.matrices["a"] = random_positive_matrix(rng, n);
    sys.matrices["b"] = random_positive_matrix(rng, n);
    PolyhedralCone K = orthant(n);
    PositivityCertificate cert =
        check_path_positive(sys, one_state({"a", "b"}), {{"q", K}});
    double worst = 0.0;
    bool all_strict = true;
    for (const auto& [sym, A] : sys.matrices) {
      PositivityCheck pc = check_positive(A, K);
      worst = std::max(worst, pc.gamma);
      all_strict = all_strict && pc.inclusion == Inclusion::Strict;
    }
    CHECK(cert.global_gamma == doctest::Approx(worst).epsilon(1e-12));
    CHECK((cert.verdict == PathVerdict::StrictlyPathPositive) == all_strict);
  }
}

TEST_CASE("certificates are deterministic across repeated runs") {
  PositivityCertificate c1 =
      check_path_positive(diag_pair(), loop_automaton(), wedge_cones());
  PositivityCertificate c2 =
      check_path_positive(diag_pair(), loop_automaton(), wedge_cones());
  REQUIRE(c1.transitions.size() == c2.transitions.size());
  for (std::size_t i = 0; i < c1.transitions.size(); ++i) {
    CHECK(c1.transitions[i].diameter == c2.transitions[i].diameter);
    CHECK(c1.transitions[i].gamma == c2.transitions[i].gamma);
  }
}

TEST_CASE("cycle eigenstructure of the loop system") {
  std::vector<CyclePF> cs = cycle_pf(diag_pair(), loop_automaton(), 2);
  REQUIRE(cs.size() == 3);

  // Self-loop at q1 under symbol 0.
  CHECK(cs[0].states == std::vector<std::string>{"q1"});
  CHECK(cs[0].labels == std::vector<std::string>{"0"});
  CHECK(cs[0].eigenvalue == doctest::Approx(5.0).epsilon(1e-12));
  REQUIRE(cs[0].rays.size() == 1);
  CHECK((cs[0].rays[0] - vec2(1, 0)).norm() < 1e-9);
  CHECK(cs[0].rotation_residual < 1e-9);  // self-rotation closes the loop

  // Word 0-then-1 anchored at q0: ordered product is diag(5,3).
  CHECK(cs[1].states == std::vector<std::string>{"q0", "q1"});
  CHECK(cs[1].labels == std::vector<std::string>{"0", "1"});
  CHECK(cs[1].eigenvalue == doctest::Approx(5.0).epsilon(1e-12));
  REQUIRE(cs[1].rays.size() == 2);
  CHECK((cs[1].rays[0] - vec2(1, 0)).norm() < 1e-9);
  CHECK((cs[1].rays[1] - vec2(1, 0)).norm() < 1e-9);

  // Its rotation anchored at q1 agrees (same spectrum, propagated ray).
  CHECK(cs[2].labels == std::vector<std::string>{"1", "0"});
  CHECK(cs[2].eigenvalue == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(cs[1].rotation_residual < 1e-9);
  CHECK(cs[2].rotation_residual < 1e-9);
}

TEST_CASE("cycle eigen failure is recorded, not thrown") {
  SwitchedSystem sys;
  sys.dim = 2;
  sys.matrices["good"] = mat2(2, 1, 1, 2);
  sys.matrices["rot"] = mat2(0, -1, 1, 0);
  Automaton a = one_state({"good", "rot"});
  std::vector<CyclePF> cs = cycle_pf(sys, a, 1);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].labels == std::vector<std::string>{"good"});
  CHECK(cs[0].error.empty());
  CHECK(cs[0].eigenvalue == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(cs[1].labels == std::vector<std::string>{"rot"});
  CHECK_FALSE(cs[1].error.empty());
  CHECK(cs[1].rays.empty());
  CHECK(std::isnan(cs[1].eigenvalue));
}

TEST_CASE("cycle rays chain through the word matrices") {
  std::mt19937_64 rng(7117);
  SwitchedSystem sys;
  sys.dim = 3;
  sys.matrices["a"] = random_positive_matrix(rng, 3);
  sys.matrices["b"] = random_positive_matrix(rng, 3);
  Automaton a = Automaton::validate(
      {"p", "q"}, {"a", "b"}, {{"p", "a", "q"}, {"q", "b", "p"}});
  std::vector<CyclePF> cs = cycle_pf(sys, a, 2);
  REQUIRE(cs.size() == 2);
  for (const auto& c : cs) {
    REQUIRE(c.error.empty());
    REQUIRE(c.rays.size() == 2);
    Vector pushed = sys.matrices.at(c.labels[0]) * c.rays[0];
    pushed /= pushed.norm();
    CHECK(std::abs(std::abs(pushed.dot(c.rays[1])) - 1.0) < 1e-9);
    CHECK(c.rotation_residual < 1e-7);
    // The full word closes the ray cycle.
    Vector closed = sys.matrices.at(c.labels[1]) * c.rays[1];
    closed /= closed.norm();
    CHECK(std::abs(std::abs(closed.dot(c.rays[0])) - 1.0) < 1e-9);
  }
  CHECK(cs[0].eigenvalue == doctest::Approx(cs[1].eigenvalue).epsilon(1e-9));
}
