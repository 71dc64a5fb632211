#include "conekit/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "conekit/hilbert.hpp"
#include "conekit/verify.hpp"

namespace conekit {
namespace {

Vector unit(const Vector& v) { return v / v.norm(); }

void require_family(const std::vector<Matrix>& mats) {
  if (mats.empty()) throw std::invalid_argument("matrix family is empty");
  const int n = static_cast<int>(mats[0].rows());
  for (const Matrix& m : mats) {
    if (m.rows() != n || m.cols() != n) {
      throw DimensionMismatch("matrix family must share one square dimension");
    }
  }
}

struct Evaluation {
  bool all_strict = true;
  double contraction = 0.0;  // max per-matrix gamma; 1 when not all strict
};

Evaluation evaluate(const std::vector<Matrix>& mats, const PolyhedralCone& K,
                    double tol, double strict_eps) {
  Evaluation ev;
  for (const Matrix& A : mats) {
    PositivityCheck pc = check_positive(A, K, tol, strict_eps);
    ev.all_strict = ev.all_strict && pc.inclusion == Inclusion::Strict;
    ev.contraction = std::max(ev.contraction, pc.gamma);
  }
  if (!ev.all_strict) ev.contraction = 1.0;
  return ev;
}

// Order-free generator-set comparison: stagnation means no ray moved by more
// than eps.
bool same_generators(const PolyhedralCone& a, const PolyhedralCone& b,
                     double eps) {
  const auto& ga = a.generators();
  const auto& gb = b.generators();
  if (ga.size() != gb.size()) return false;
  for (const Vector& x : ga) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& y : gb) best = std::min(best, (x - y).norm());
    if (best > eps) return false;
  }
  return true;
}

// Random-vector orbit span: if the orbit of a generic vector under the
// family (or its transposes) stays in a proper subspace, a common invariant
// subspace exists and completeness of the search is not guaranteed.
bool orbit_deficient(const std::vector<Matrix>& mats, bool transpose) {
  const int n = static_cast<int>(mats[0].rows());
  std::mt19937_64 rng(transpose ? 0x5eedc0def1u : 0x5eedc0def0u);
  std::normal_distribution<double> gauss;
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = gauss(rng);
  x.normalize();

  std::vector<Vector> basis{x};
  bool grew = true;
  while (grew && static_cast<int>(basis.size()) < n) {
    grew = false;
    for (const Matrix& m : mats) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if (static_cast<int>(basis.size()) >= n) break;
        Vector c = transpose ? Vector(m.transpose() * basis[b]) : Vector(m * basis[b]);
        for (const Vector& u : basis) c -= u.dot(c) * u;
        if (c.norm() > 1e-8) {
          basis.push_back(c.normalized());
          grew = true;
        }
      }
    }
  }
  return static_cast<int>(basis.size()) < n;
}

// Verified widening: candidate cones spanned by the current generators plus
// a symmetric cross of rays around the mean eigen-direction. Only a
// candidate that independently verifies as gamma-contracting is accepted.
struct Probe {
  PolyhedralCone cone;
  double contraction = 1.0;
};

std::optional<Probe> try_probes(const std::vector<Matrix>& mats,
                                const PolyhedralCone& K,
                                const std::vector<Vector>& oriented,
                                const SearchConfig& cfg) {
  const int n = static_cast<int>(mats[0].rows());
  Vector vbar = Vector::Zero(n);
  for (const Vector& v : oriented) vbar += unit(v);
  if (vbar.norm() < 1e-12) return std::nullopt;
  vbar.normalize();

  // Orthonormal completion of vbar via Householder QR.
  Matrix M = Matrix::Zero(n, n);
  M.col(0) = vbar;
  Eigen::HouseholderQR<Matrix> qr(M);
  Matrix Q = qr.householderQ();
  if (Q.col(0).dot(vbar) < 0) Q = -Q;

  std::optional<Probe> best;
  for (int k = -10; k <= 3; ++k) {
    const double t = std::ldexp(1.0, k);
    std::vector<Vector> gens = K.generators();
    for (int j = 1; j < n; ++j) {
      gens.push_back(unit(vbar + t * Q.col(j)));
      gens.push_back(unit(vbar - t * Q.col(j)));
    }
    std::optional<PolyhedralCone> cand;
    try {
      cand = PolyhedralCone::from_generators(gens, cfg.tol);
    } catch (const NotPointed&) {
      continue;
    }
    if (!cand->is_solid(cfg.tol)) continue;
    Evaluation ev = evaluate(mats, *cand, cfg.tol, cfg.strict_eps);
    if (ev.all_strict && ev.contraction <= cfg.gamma) {
      if (!best || ev.contraction < best->contraction) {
        best = Probe{std::move(*cand), ev.contraction};
      }
    }
  }
  return best;
}

SearchOutcome finalize(const std::vector<Matrix>& mats, const PolyhedralCone& K,
                       SearchOutcome out, const SearchConfig& cfg,
                       const std::string& why) {
  Evaluation ev = evaluate(mats, K, cfg.tol, cfg.strict_eps);
  out.reason = why;
  if (ev.all_strict && ev.contraction <= cfg.gamma) {
    out.status = SearchStatus::FoundGammaContracting;
    out.cone = K;
    out.gamma_achieved = ev.contraction;
  } else if (ev.all_strict && ev.contraction < 1.0) {
    out.status = SearchStatus::FoundDeltaInvariant;
    out.cone = K;
    out.delta = ev.contraction;
    out.gamma_achieved = ev.contraction;
  } else {
    out.status = SearchStatus::Inconclusive;
    out.gamma_achieved = ev.contraction;
  }
  return out;
}

}  // namespace

std::vector<InvariantSplitting> basic_test(const std::vector<Matrix>& mats,
                                           double tol) {
  require_family(mats);
  std::vector<InvariantSplitting> ss;
  ss.reserve(mats.size());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    try {
      ss.push_back(dominant_eigenpair(mats[i]));
    } catch (const NoStrictDominance& e) {
      throw BasicTestFailed("matrix " + std::to_string(i) +
                                " has no invariant splitting: " + e.what(),
                            static_cast<int>(i), -1);
    }
  }
  for (std::size_t i = 0; i < ss.size(); ++i) {
    for (std::size_t j = 0; j < ss.size(); ++j) {
      if (std::abs(ss[j].left.dot(ss[i].right)) <= tol) {
        throw BasicTestFailed(
            "dominant eigenvector of matrix " + std::to_string(i) +
                " lies on the invariant hyperplane of matrix " +
                std::to_string(j),
            static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return ss;
}

std::vector<Vector> orient(const std::vector<InvariantSplitting>& splittings) {
  if (splittings.empty()) throw std::invalid_argument("no splittings to orient");
  const Vector& w_ref = splittings[0].left;
  std::vector<Vector> out;
  out.reserve(splittings.size());
  for (const auto& s : splittings) {
    const double side = w_ref.dot(s.right);
    if (side == 0.0) {
      throw std::invalid_argument("orientation undefined: eigenvector on the reference hyperplane");
    }
    out.push_back(side > 0 ? s.right : Vector(-s.right));
  }
  return out;
}

PolyhedralCone seed_cone(const std::vector<Matrix>& mats,
                         const std::vector<Vector>& oriented, int depth,
                         double tol) {
  require_family(mats);
  if (depth < 0) throw std::invalid_argument("seed depth must be nonnegative");
  if (oriented.empty()) throw std::invalid_argument("no eigenvectors to seed from");
  std::vector<Vector> points = oriented;
  std::vector<Vector> frontier = oriented;
  for (int l = 0; l < depth; ++l) {
    std::vector<Vector> next;
    next.reserve(frontier.size() * mats.size());
    for (const Matrix& A : mats) {
      for (const Vector& f : frontier) next.push_back(A * f);
    }
    points.insert(points.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return PolyhedralCone::from_generators(points, tol);
}

Vector inflate_point(const Vector& x, const Vector& y, double rho, double tol) {
  if (x.size() != y.size()) throw DimensionMismatch("inflate_point: size mismatch");
  const double nx = x.norm(), ny = y.norm();
  if (!(nx > 0.0) || !(ny > 0.0) || !std::isfinite(nx) || !std::isfinite(ny)) {
    throw std::invalid_argument("inflate_point: points must be nonzero and finite");
  }
  if (!(rho > 1.0)) throw std::invalid_argument("inflate_point: rho must exceed 1");
  if (1.0 - std::abs(x.dot(y)) / (nx * ny) <= tol) {
    throw ParallelPoints("inflate_point: points are parallel");
  }
  return y + (y - x) / (rho - 1.0);
}

double scale_to_hyperplane(const Vector& x, const Vector& y, const Vector& w,
                           double tol) {
  if (x.size() != y.size() || x.size() != w.size()) {
    throw DimensionMismatch("scale_to_hyperplane: size mismatch");
  }
  const double nw = w.norm();
  if (!(nw > 0.0)) throw std::invalid_argument("scale_to_hyperplane: zero normal");
  const double sx = w.dot(x) / (nw * std::max(x.norm(), 1e-300));
  const double sy = w.dot(y) / (nw * std::max(y.norm(), 1e-300));
  if (std::abs(sx) <= tol || std::abs(sy) <= tol || sx * sy < 0.0) {
    throw DegenerateSigns("scale_to_hyperplane: points do not sit strictly on one side");
  }
  return w.dot(y) / w.dot(x);
}

SearchOutcome find_contracting_cone(const std::vector<Matrix>& mats,
                                    const SearchConfig& cfg) {
  require_family(mats);
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) {
    throw std::invalid_argument("target gamma must lie strictly inside (0,1)");
  }
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be positive");

  SearchOutcome out;
  std::vector<InvariantSplitting> ss;
  try {
    ss = basic_test(mats, std::max(cfg.tol, 1e-12));
  } catch (const BasicTestFailed& e) {
    out.status = SearchStatus::No;
    out.reason = e.what();
    return out;
  }
  const std::vector<Vector> oriented = orient(ss);

  if (orbit_deficient(mats, false) || orbit_deficient(mats, true)) {
    out.warning =
        "random-vector orbit spans a proper subspace: the family appears to "
        "share an invariant subspace, so a failed search is not a proof of "
        "absence";
  }

  std::optional<PolyhedralCone> seeded;
  try {
    seeded = seed_cone(mats, oriented, cfg.seed_depth, cfg.tol);
  } catch (const NotPointed&) {
    out.status = SearchStatus::No;
    out.reason = "seed hull is not pointed: no common invariant cone exists";
    return out;
  }
  PolyhedralCone K = std::move(*seeded);

  int level = 0;
  double gamma_level = cfg.gamma;
  double rho = rho_for_gamma(gamma_level);
  bool probes_spent = false;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    out.iterations = iter + 1;
    if (cfg.keep_iterates) out.iterates.push_back(K);

    Evaluation ev = evaluate(mats, K, cfg.tol, cfg.strict_eps);
    out.trace.push_back({iter, static_cast<int>(K.generators().size()),
                         ev.contraction, level, ""});
    if (ev.all_strict && ev.contraction <= cfg.gamma) {
      out.status = SearchStatus::FoundGammaContracting;
      out.cone = K;
      out.gamma_achieved = ev.contraction;
      return out;
    }

    // Refutation: an inner bound of every invariant cone may never touch an
    // invariant hyperplane. Sound only while growth used the target radius.
    for (std::size_t i = 0; i < ss.size(); ++i) {
      if (K.meets_hyperplane(ss[i].left, cfg.tol)) {
        if (level == 0) {
          out.status = SearchStatus::No;
          out.reason = "inner bound straddles the invariant hyperplane of matrix " +
                       std::to_string(i);
          out.witness_cone = K;
          out.witness_index = static_cast<int>(i);
          return out;
        }
        return finalize(mats, K, std::move(out), cfg,
                        "inner bound left the target-radius regime and touched an "
                        "invariant hyperplane");
      }
    }

    // Forward propagation.
    std::optional<PolyhedralCone> grown_opt;
    try {
      std::vector<PolyhedralCone> pieces{K};
      for (const Matrix& A : mats) pieces.push_back(image(K, A, cfg.tol));
      grown_opt = hull_union(pieces, cfg.tol);
    } catch (const NotPointed&) {
      if (level == 0) {
        out.status = SearchStatus::No;
        out.reason = "forward propagation folds the inner bound onto a line";
        return out;
      }
      return finalize(mats, K, std::move(out), cfg,
                      "propagation degenerated after leaving the target radius");
    }
    const PolyhedralCone& grown = *grown_opt;

    // Inflation: push every image vertex still on the boundary of the grown
    // hull outward along the chord from its farthest sibling, rescaled so
    // the chord is parallel to the matrix's invariant hyperplane.
    std::vector<Vector> added;
    for (std::size_t mi = 0; mi < mats.size(); ++mi) {
      std::vector<Vector> verts;
      const double drop = cfg.tol * std::max(1.0, mats[mi].cwiseAbs().maxCoeff());
      for (const Vector& g : K.generators()) {
        Vector y = mats[mi] * g;
        if (y.norm() > drop) verts.push_back(std::move(y));
      }
      if (verts.size() < 2) continue;
      for (const Vector& y : verts) {
        if (grown.contains_interior(y, cfg.strict_eps)) continue;
        const Vector uy = unit(y);
        double best_dot = 1.0;
        std::size_t best_j = verts.size();
        for (std::size_t j = 0; j < verts.size(); ++j) {
          const double d = std::abs(unit(verts[j]).dot(uy));
          if (d < best_dot) {
            best_dot = d;
            best_j = j;
          }
        }
        if (best_j == verts.size() || 1.0 - best_dot <= 1e-12) continue;
        try {
          const double lam = scale_to_hyperplane(verts[best_j], y, ss[mi].left, cfg.tol);
          added.push_back(inflate_point(lam * verts[best_j], y, rho, cfg.tol));
        } catch (const DegenerateSigns&) {
        } catch (const ParallelPoints&) {
        }
      }
    }

    std::optional<PolyhedralCone> next;
    try {
      if (added.empty()) {
        next = grown;
      } else {
        std::vector<Vector> gens = grown.generators();
        gens.insert(gens.end(), added.begin(), added.end());
        next = PolyhedralCone::from_generators(gens, cfg.tol);
      }
    } catch (const NotPointed&) {
      if (level == 0) {
        out.status = SearchStatus::No;
        out.reason = "inflation folds the inner bound onto a line";
        return out;
      }
      return finalize(mats, K, std::move(out), cfg,
                      "inflation degenerated after leaving the target radius");
    }

    if (same_generators(*next, K, cfg.growth_eps)) {
      if (cfg.enable_probes && !probes_spent) {
        probes_spent = true;
        if (auto probe = try_probes(mats, K, oriented, cfg)) {
          out.trace.push_back({iter, static_cast<int>(probe->cone.generators().size()),
                               probe->contraction, level, "probe"});
          out.status = SearchStatus::FoundGammaContracting;
          out.cone = probe->cone;
          out.gamma_achieved = probe->contraction;
          return out;
        }
      }
      if (cfg.enable_ladder && gamma_level > 0.05) {
        gamma_level = std::max(0.03, 0.6 * gamma_level);
        rho = rho_for_gamma(gamma_level);
        ++level;
        continue;  // same bound, deeper inflation radius
      }
      return finalize(mats, K, std::move(out), cfg, "growth stagnated");
    }
    K = std::move(*next);
  }
  return finalize(mats, K, std::move(out), cfg, "iteration budget exhausted");
}

}  // namespace conekit
