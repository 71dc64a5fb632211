#include "conekit/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace conekit {

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

void sort_canonical(std::vector<Vector>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
}

// Unit-normalizes and removes same-direction duplicates (dot >= 1 - tol),
// preserving first-seen order.
std::vector<Vector> unit_dedupe(const std::vector<Vector>& vs, double tol) {
  std::vector<Vector> out;
  out.reserve(vs.size());
  for (const Vector& v : vs) {
    const double n = v.norm();
    if (n <= 1e-14)
      throw std::invalid_argument("cone: zero vector in representation");
    Vector u = v / n;
    bool dup = false;
    for (const Vector& w : out)
      if (u.dot(w) >= 1.0 - tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(u));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Phase-1 simplex feasibility: is `target` a nonnegative combination of
// `cols`? Bland's rule makes every pivot decision exact (index order), so
// the routine terminates without cycling; tolerances appear only in the
// pivot/feasibility thresholds. Inputs are expected at unit scale.
bool in_conic_hull(const std::vector<Vector>& cols, const Vector& target,
                   double tol) {
  const int m = static_cast<int>(target.size());
  const int k = static_cast<int>(cols.size());
  if (k == 0) return target.norm() <= tol;
  const int width = k + m + 1;  // variables, artificials, rhs
  const double piv_tol = 1e-12;

  Eigen::MatrixXd T(m, width);
  for (int j = 0; j < k; ++j) T.col(j) = cols[static_cast<size_t>(j)];
  T.block(0, k, m, m) = Eigen::MatrixXd::Identity(m, m);
  T.col(width - 1) = target;
  for (int i = 0; i < m; ++i)
    if (T(i, width - 1) < 0.0) T.row(i) *= -1.0;

  std::vector<int> basis(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = k + i;

  // Reduced costs for "minimize sum of artificials": z_j = sum_i T(i,j) - c_j.
  Eigen::RowVectorXd z = T.colwise().sum();
  for (int j = k; j < k + m; ++j) z(j) -= 1.0;

  const int max_pivots = 10000 + 200 * width;
  for (int it = 0; it < max_pivots; ++it) {
    int enter = -1;
    for (int j = 0; j < k + m; ++j)
      if (z(j) > piv_tol) {
        enter = j;
        break;
      }
    if (enter < 0) return z(width - 1) <= tol * std::max(1.0, target.norm());

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) <= piv_tol) continue;
      const double ratio = T(i, width - 1) / T(i, enter);
      if (leave < 0 || ratio < best_ratio - piv_tol ||
          (std::abs(ratio - best_ratio) <= piv_tol &&
           basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase-1 objective is bounded below by zero, so an unbounded pivot
    // column signals numerical breakdown, not a real certificate.
    if (leave < 0) throw std::logic_error("in_conic_hull: unbounded phase-1 pivot");

    T.row(leave) /= T(leave, enter);
    for (int i = 0; i < m; ++i)
      if (i != leave && std::abs(T(i, enter)) > 0.0)
        T.row(i) -= T(i, enter) * T.row(leave);
    z -= z(enter) * T.row(leave);
    basis[static_cast<size_t>(leave)] = enter;
  }
  throw std::logic_error("in_conic_hull: pivot budget exhausted");
}

// Not-pointed test: some convex combination of the rays is zero. Lifting
// each ray by a homogenizing 1 turns this into conic feasibility.
bool hull_contains_line(const std::vector<Vector>& rays, double tol) {
  const Eigen::Index n = rays.front().size();
  std::vector<Vector> lifted;
  lifted.reserve(rays.size());
  for (const Vector& r : rays) {
    Vector l(n + 1);
    l.head(n) = r;
    l(n) = 1.0;
    lifted.push_back(std::move(l));
  }
  Vector target = Vector::Zero(n + 1);
  target(n) = 1.0;
  return in_conic_hull(lifted, target, tol);
}

// One-pass redundancy removal; extreme rays are never removable, so a single
// sweep against the surviving set is exact.
std::vector<Vector> prune_conic(const std::vector<Vector>& rays, double tol) {
  std::vector<Vector> alive = rays;
  size_t i = 0;
  while (i < alive.size()) {
    if (alive.size() == 1) break;
    std::vector<Vector> others;
    others.reserve(alive.size() - 1);
    for (size_t j = 0; j < alive.size(); ++j)
      if (j != i) others.push_back(alive[j]);
    if (in_conic_hull(others, alive[i], tol))
      alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return alive;
}

// 2-D specialization: a pointed planar cone is an angular arc below pi; its
// extreme rays are the arc endpoints. Throws NotPointed at span >= pi.
std::vector<Vector> prune_2d(const std::vector<Vector>& rays, double tol) {
  if (rays.size() == 1) return rays;
  std::vector<double> ang(rays.size());
  for (size_t i = 0; i < rays.size(); ++i)
    ang[i] = std::atan2(rays[i](1), rays[i](0));
  std::vector<size_t> order(rays.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return ang[a] < ang[b]; });

  double best_gap = -1.0;
  size_t gap_at = 0;  // gap between order[gap_at] and its successor
  for (size_t i = 0; i < order.size(); ++i) {
    const size_t j = (i + 1) % order.size();
    double gap = ang[order[j]] - ang[order[i]];
    if (j == 0) gap += 2.0 * std::numbers::pi;
    if (gap > best_gap) {
      best_gap = gap;
      gap_at = i;
    }
  }
  if (best_gap <= std::numbers::pi + tol)
    throw NotPointed("2-D hull spans a half-plane or more");
  const Vector& lo = rays[order[(gap_at + 1) % order.size()]];
  const Vector& hi = rays[order[gap_at]];
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Incremental double description for {x : c^T x >= 0, c in constraints}.
// Lineality space and extreme rays of the (possibly non-pointed) result;
// adjacency is decided combinatorially from shared tight constraints.
struct DualDesc {
  std::vector<Vector> lin;
  std::vector<Vector> rays;
};

DualDesc dual_description(const std::vector<Vector>& constraints, int n,
                          double tol) {
  DualDesc dd;
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e(i) = 1.0;
    dd.lin.push_back(std::move(e));
  }
  std::vector<Vector> processed;

  for (const Vector& c : constraints) {
    // Lineality split: pivot the basis vector most exposed to c.
    int zi = -1;
    double zval = tol;
    for (size_t i = 0; i < dd.lin.size(); ++i) {
      const double v = std::abs(c.dot(dd.lin[i]));
      if (v > zval) {
        zval = v;
        zi = static_cast<int>(i);
      }
    }
    if (zi >= 0) {
      Vector z0 = dd.lin[static_cast<size_t>(zi)];
      if (c.dot(z0) < 0.0) z0 = -z0;
      const double cz0 = c.dot(z0);
      std::vector<Vector> lin_next;
      for (size_t i = 0; i < dd.lin.size(); ++i) {
        if (static_cast<int>(i) == zi) continue;
        Vector z = dd.lin[i] - (c.dot(dd.lin[i]) / cz0) * z0;
        lin_next.push_back(z.normalized());
      }
      for (Vector& r : dd.rays) {
        r -= (c.dot(r) / cz0) * z0;
        const double nr = r.norm();
        if (nr > 1e-14) r /= nr;
      }
      dd.rays.push_back(z0.normalized());
      dd.lin = std::move(lin_next);
      processed.push_back(c);
      continue;
    }

    std::vector<double> val(dd.rays.size());
    std::vector<int> cls(dd.rays.size());  // +1 / 0 / -1
    bool any_neg = false;
    for (size_t i = 0; i < dd.rays.size(); ++i) {
      val[i] = c.dot(dd.rays[i]);
      cls[i] = val[i] > tol ? 1 : (val[i] < -tol ? -1 : 0);
      any_neg = any_neg || cls[i] < 0;
    }
    if (!any_neg) {
      processed.push_back(c);
      continue;
    }

    auto adjacent = [&](size_t p, size_t q) {
      std::vector<const Vector*> tight;
      for (const Vector& pc : processed)
        if (std::abs(pc.dot(dd.rays[p])) <= tol &&
            std::abs(pc.dot(dd.rays[q])) <= tol)
          tight.push_back(&pc);
      for (size_t r = 0; r < dd.rays.size(); ++r) {
        if (r == p || r == q) continue;
        bool blocks = true;
        for (const Vector* pc : tight)
          if (std::abs(pc->dot(dd.rays[r])) > tol) {
            blocks = false;
            break;
          }
        if (blocks) return false;
      }
      return true;
    };

    std::vector<Vector> next;
    for (size_t i = 0; i < dd.rays.size(); ++i)
      if (cls[i] >= 0) next.push_back(dd.rays[i]);
    for (size_t p = 0; p < dd.rays.size(); ++p) {
      if (cls[p] != 1) continue;
      for (size_t q = 0; q < dd.rays.size(); ++q) {
        if (cls[q] != -1 || !adjacent(p, q)) continue;
        Vector w = val[p] * dd.rays[q] - val[q] * dd.rays[p];
        const double nw = w.norm();
        if (nw <= 1e-14) continue;
        w /= nw;
        bool dup = false;
        for (const Vector& u : next)
          if (u.dot(w) >= 1.0 - tol) {
            dup = true;
            break;
          }
        if (!dup) next.push_back(std::move(w));
      }
    }
    dd.rays = std::move(next);
    processed.push_back(c);
  }
  return dd;
}

int span_rank(const std::vector<Vector>& a, const std::vector<Vector>& b, int n,
              double tol) {
  Matrix m(n, static_cast<Eigen::Index>(a.size() + b.size()));
  Eigen::Index col = 0;
  for (const Vector& v : a) m.col(col++) = v;
  for (const Vector& v : b) m.col(col++) = v;
  if (m.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

void validate_family(const std::vector<Vector>& vs, const char* what) {
  if (vs.empty())
    throw std::invalid_argument(std::string("cone: empty ") + what + " list");
  const Eigen::Index n = vs.front().size();
  if (n == 0) throw std::invalid_argument("cone: zero-dimensional vectors");
  for (const Vector& v : vs) {
    if (v.size() != n)
      throw DimensionMismatch(std::string("cone: inconsistent ") + what +
                              " dimensions");
    if (!v.allFinite())
      throw std::invalid_argument(std::string("cone: non-finite ") + what);
  }
}

}  // namespace

PolyhedralCone PolyhedralCone::from_generators(const std::vector<Vector>& rays,
                                               double tol) {
  validate_family(rays, "generator");
  const int n = static_cast<int>(rays.front().size());
  std::vector<Vector> gens = unit_dedupe(rays, tol);

  if (n == 2) {
    gens = prune_2d(gens, tol);
  } else {
    if (gens.size() > 1 && hull_contains_line(gens, tol))
      throw NotPointed("generator hull contains a line");
    gens = prune_conic(gens, tol);
  }

  DualDesc dual = dual_description(gens, n, tol);
  PolyhedralCone K;
  K.dim_ = n;
  K.generators_ = std::move(gens);
  K.facets_ = std::move(dual.rays);
  for (const Vector& z : dual.lin) {
    K.facets_.push_back(z);
    K.facets_.push_back(-z);
  }
  if (K.facets_.empty())
    throw std::logic_error("from_generators: empty facet description");
  sort_canonical(K.generators_);
  sort_canonical(K.facets_);
  for (const Vector& a : K.facets_)
    for (const Vector& g : K.generators_)
      if (a.dot(g) < -10.0 * tol)
        throw std::logic_error("from_generators: inconsistent dual description");
  return K;
}

PolyhedralCone PolyhedralCone::from_facets(const std::vector<Vector>& normals,
                                           double tol) {
  validate_family(normals, "facet");
  const int n = static_cast<int>(normals.front().size());
  std::vector<Vector> facets = unit_dedupe(normals, tol);

  DualDesc primal = dual_description(facets, n, tol);
  if (span_rank(primal.lin, primal.rays, n, tol) < n)
    throw NotSolid("facet system admits no interior point");
  if (!primal.lin.empty())
    throw NotPointed("facet system admits a line");

  // Cone is solid and pointed, so its dual is pointed and the normal set can
  // be pruned with the generator machinery.
  facets = n == 2 ? prune_2d(facets, tol) : prune_conic(facets, tol);

  PolyhedralCone K;
  K.dim_ = n;
  K.generators_ = std::move(primal.rays);
  K.facets_ = std::move(facets);
  sort_canonical(K.generators_);
  sort_canonical(K.facets_);
  for (const Vector& a : K.facets_)
    for (const Vector& g : K.generators_)
      if (a.dot(g) < -10.0 * tol)
        throw std::logic_error("from_facets: inconsistent dual description");
  return K;
}

bool PolyhedralCone::is_solid(double tol) const {
  return span_rank(generators_, {}, dim_, tol) == dim_;
}

double PolyhedralCone::margin(const Vector& x) const {
  if (x.size() != dim_)
    throw DimensionMismatch("margin: vector dimension mismatch");
  const double nx = x.norm();
  if (nx <= 1e-300) return 0.0;
  double m = std::numeric_limits<double>::infinity();
  for (const Vector& a : facets_) m = std::min(m, a.dot(x) / nx);
  return m;
}

bool PolyhedralCone::contains(const Vector& x, double tol) const {
  return margin(x) >= -tol;
}

bool PolyhedralCone::contains_interior(const Vector& x, double eps) const {
  if (x.norm() <= 1e-300) return false;
  return margin(x) >= eps;
}

bool PolyhedralCone::meets_hyperplane(const Vector& w, double tol) const {
  if (w.size() != dim_)
    throw DimensionMismatch("meets_hyperplane: vector dimension mismatch");
  const double nw = w.norm();
  bool pos = false, neg = false;
  for (const Vector& g : generators_) {
    const double v = w.dot(g);
    if (std::abs(v) <= tol * nw) return true;  // generator inside w^perp
    (v > 0.0 ? pos : neg) = true;
    if (pos && neg) return true;
  }
  return false;
}

InclusionResult includes(const PolyhedralCone& outer, const PolyhedralCone& inner,
                         double tol, double strict_eps) {
  if (outer.dim() != inner.dim())
    throw DimensionMismatch("includes: cone dimensions differ");
  InclusionResult res;
  res.verdict = Inclusion::Strict;
  const auto& facets = outer.facets();
  for (size_t gi = 0; gi < inner.generators().size(); ++gi) {
    const Vector& g = inner.generators()[gi];
    double worst = std::numeric_limits<double>::infinity();
    size_t worst_f = 0;
    for (size_t fi = 0; fi < facets.size(); ++fi) {
      const double v = facets[fi].dot(g);
      if (v < worst) {
        worst = v;
        worst_f = fi;
      }
    }
    if (worst < -tol) {
      InclusionWitness w;
      w.generator_index = static_cast<int>(gi);
      w.facet_index = static_cast<int>(worst_f);
      w.generator = g;
      w.facet = facets[worst_f];
      w.margin = worst;
      res.verdict = Inclusion::No;
      res.witness = std::move(w);
      return res;
    }
    if (worst < strict_eps) res.verdict = Inclusion::NonStrict;
  }
  return res;
}

PolyhedralCone image(const PolyhedralCone& K, const Matrix& A, double tol) {
  if (A.rows() != A.cols() || static_cast<int>(A.cols()) != K.dim())
    throw DimensionMismatch("image: matrix does not match cone dimension");
  const double scale = std::max(1e-300, A.cwiseAbs().maxCoeff());
  std::vector<Vector> mapped;
  mapped.reserve(K.generators().size());
  for (const Vector& g : K.generators()) {
    Vector y = A * g;
    if (y.norm() > tol * scale) mapped.push_back(std::move(y));
  }
  if (mapped.empty())
    throw std::invalid_argument("image: cone collapsed to the origin");
  return PolyhedralCone::from_generators(mapped, tol);
}

PolyhedralCone hull_union(const std::vector<PolyhedralCone>& cones, double tol) {
  if (cones.empty())
    throw std::invalid_argument("hull_union: empty cone list");
  std::vector<Vector> all;
  for (const PolyhedralCone& K : cones) {
    if (K.dim() != cones.front().dim())
      throw DimensionMismatch("hull_union: cone dimensions differ");
    all.insert(all.end(), K.generators().begin(), K.generators().end());
  }
  return PolyhedralCone::from_generators(all, tol);
}

}  // namespace conekit
