#include "conekit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conekit/hilbert.hpp"
#include "conekit/parallel.hpp"

namespace conekit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector unit(const Vector& v) { return v / v.norm(); }

void require_square(const Matrix& A, int dim, const std::string& label) {
  if (A.rows() != dim || A.cols() != dim) {
    throw InconsistentDimensions("matrix '" + label + "' is " +
                                 std::to_string(A.rows()) + "x" +
                                 std::to_string(A.cols()) + ", expected " +
                                 std::to_string(dim) + "x" +
                                 std::to_string(dim));
  }
}

const Matrix& matrix_for(const SwitchedSystem& sys, const std::string& symbol) {
  auto it = sys.matrices.find(symbol);
  if (it == sys.matrices.end()) {
    throw InconsistentDimensions("alphabet symbol '" + symbol +
                                 "' has no matrix");
  }
  return it->second;
}

}  // namespace

PositivityCheck check_transition(const Matrix& A, const PolyhedralCone& src,
                                 const PolyhedralCone& dst, double tol,
                                 double strict_eps) {
  if (src.dim() != dst.dim() || A.rows() != dst.dim() || A.cols() != src.dim()) {
    throw DimensionMismatch("check_transition: incompatible dimensions");
  }

  // Classify the raw mapped generators against dst's facets. Working on the
  // vectors directly keeps a witness available even when the image folds to
  // a non-pointed set.
  const auto& gens = src.generators();
  const auto& facets = dst.facets();
  const double drop = tol * std::max(1.0, A.cwiseAbs().maxCoeff());

  PositivityCheck out;
  out.inclusion = Inclusion::Strict;
  bool any_mapped = false;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    Vector y = A * gens[gi];
    const double ny = y.norm();
    if (ny <= drop) continue;  // annihilated generator: 0 lies in every cone
    any_mapped = true;
    double worst = kInf;
    std::size_t worst_facet = 0;
    for (std::size_t fi = 0; fi < facets.size(); ++fi) {
      const double m = facets[fi].dot(y) / ny;
      if (m < worst) {
        worst = m;
        worst_facet = fi;
      }
    }
    if (worst < -tol) {
      out.inclusion = Inclusion::No;
      out.witness = InclusionWitness{static_cast<int>(gi), static_cast<int>(worst_facet),
                                     y, facets[worst_facet], worst};
      break;
    }
    if (worst < strict_eps) out.inclusion = Inclusion::NonStrict;
  }
  if (!any_mapped && out.inclusion != Inclusion::No) {
    out.inclusion = Inclusion::NonStrict;  // image is {0}: contained, no interior
  }

  if (out.inclusion == Inclusion::Strict) {
    out.diameter = projective_diameter(A, src, dst, tol);
    out.gamma = contraction_ratio(out.diameter);
  } else {
    out.diameter = kInf;
    out.gamma = 1.0;
  }
  return out;
}

PositivityCheck check_positive(const Matrix& A, const PolyhedralCone& K,
                               double tol, double strict_eps) {
  return check_transition(A, K, K, tol, strict_eps);
}

PositivityCertificate check_path_positive(const SwitchedSystem& sys,
                                          const Automaton& a,
                                          const ConeAssignment& cones,
                                          double tol, double strict_eps) {
  const int n = sys.dim;
  if (n <= 0) throw InconsistentDimensions("system dimension must be positive");
  for (const auto& [sym, A] : sys.matrices) require_square(A, n, sym);
  for (const auto& sym : a.alphabet()) matrix_for(sys, sym);
  for (const auto& q : a.states()) {
    auto it = cones.find(q);
    if (it == cones.end()) throw MissingCone("state '" + q + "' has no cone");
    if (it->second.dim() != n) {
      throw InconsistentDimensions("cone for state '" + q + "' lives in dimension " +
                                   std::to_string(it->second.dim()));
    }
    if (!it->second.is_solid(tol)) {
      throw NotSolid("cone for state '" + q + "' has empty interior");
    }
  }

  const auto& trans = a.transitions();  // canonical (from, symbol, to) order
  PositivityCertificate cert;
  cert.transitions.resize(trans.size());
  parallel_for(trans.size(), [&](std::size_t i) {
    const Transition& t = trans[i];
    PositivityCheck c = check_transition(matrix_for(sys, t.symbol),
                                         cones.at(t.from), cones.at(t.to), tol,
                                         strict_eps);
    cert.transitions[i] = TransitionCheck{t, c.inclusion, c.diameter, c.gamma,
                                          std::move(c.witness)};
  });

  cert.global_gamma = 0.0;
  bool all_strict = true;
  bool all_included = true;
  for (const auto& tc : cert.transitions) {
    cert.global_gamma = std::max(cert.global_gamma, tc.gamma);
    all_strict = all_strict && tc.inclusion == Inclusion::Strict;
    all_included = all_included && tc.inclusion != Inclusion::No;
  }
  if (cert.transitions.empty()) cert.global_gamma = 1.0;
  cert.verdict = all_strict     ? PathVerdict::StrictlyPathPositive
                 : all_included ? PathVerdict::PathPositive
                                : PathVerdict::NotPathPositive;
  return cert;
}

std::vector<CyclePF> cycle_pf(const SwitchedSystem& sys, const Automaton& a,
                              int max_len, double tol) {
  const int n = sys.dim;
  if (n <= 0) throw InconsistentDimensions("system dimension must be positive");
  for (const auto& [sym, A] : sys.matrices) require_square(A, n, sym);
  for (const auto& sym : a.alphabet()) matrix_for(sys, sym);

  const auto cycles = a.simple_cycles(max_len);
  std::vector<CyclePF> out(cycles.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    CyclePF& r = out[ci];
    r.states = cycles[ci].states;
    r.labels = cycles[ci].labels;
    r.rotation_residual = nan;
    std::vector<Matrix> word;
    word.reserve(r.labels.size());
    for (const auto& sym : r.labels) word.push_back(matrix_for(sys, sym));
    try {
      const InvariantSplitting s = dominant_eigenpair(matrix_product(word), tol);
      r.eigenvalue = s.lambda;
      r.rays.push_back(canonical_sign(s.right));
      for (std::size_t k = 0; k + 1 < r.labels.size(); ++k) {
        r.rays.push_back(unit(word[k] * r.rays.back()));
      }
    } catch (const std::runtime_error& e) {
      r.eigenvalue = nan;
      r.rays.clear();
      r.error = e.what();
    }
  }

  // Cross-check each cycle against its single left rotation: conjugating the
  // product by A_{label 0} carries ray 0 onto the rotation's ray 0 and
  // preserves the eigenvalue.
  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    CyclePF& r = out[ci];
    if (!r.error.empty()) continue;
    const std::size_t len = r.labels.size();
    std::vector<std::string> rot_states(r.states.begin() + 1, r.states.end());
    rot_states.push_back(r.states.front());
    std::vector<std::string> rot_labels(r.labels.begin() + 1, r.labels.end());
    rot_labels.push_back(r.labels.front());
    if (len == 1) {
      rot_states = r.states;
      rot_labels = r.labels;
    }
    const CyclePF* twin = nullptr;
    for (const auto& cand : out) {
      if (cand.states == rot_states && cand.labels == rot_labels) {
        twin = &cand;
        break;
      }
    }
    if (twin == nullptr || !twin->error.empty()) continue;
    const Vector expected = unit(matrix_for(sys, r.labels[0]) * r.rays[0]);
    const double cosang =
        std::min(1.0, std::abs(expected.dot(twin->rays[0])));
    const double lam_dev = std::abs(r.eigenvalue - twin->eigenvalue) /
                           std::max(std::abs(r.eigenvalue), 1e-300);
    r.rotation_residual = std::max(std::acos(cosang), lam_dev);
  }
  return out;
}

}  // namespace conekit
