#include "asymvol/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "asymvol/error.hpp"
#include "asymvol/linalg.hpp"

namespace asymvol {

namespace {

using i128 = __int128;

bool lex_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void dedupe(std::vector<RatVec>& pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

RatMatrix normal_rows(const std::vector<Inequality>& ineqs, const std::vector<std::size_t>& idx) {
  RatMatrix m;
  m.reserve(idx.size());
  for (auto i : idx) m.push_back(to_rat(ineqs[i].normal));
  return m;
}

// Calls f on every k-subset of {0..n-1}, as a sorted index vector.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t affine_rank(const std::vector<RatVec>& pts) {
  if (pts.size() <= 1) return 0;
  RatMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  return rank(diffs);
}

IntVec primitive(IntVec v) {
  long long g = 0;
  for (auto x : v) g = gcd_ll(g, x);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
  return v;
}

std::vector<RatVec> enumerate_vertices(int dim, const std::vector<Inequality>& ineqs) {
  std::vector<RatVec> out;
  if (dim == 0) {
    for (const auto& ie : ineqs) {
      if (ie.offset < 0) return out;
    }
    out.push_back(RatVec{});
    return out;
  }
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (std::any_of(ineqs[i].normal.begin(), ineqs[i].normal.end(), [](long long x) { return x != 0; })) {
      usable.push_back(i);
    }
  }
  for_each_subset(usable.size(), static_cast<std::size_t>(dim), [&](const std::vector<std::size_t>& sub) {
    std::vector<std::size_t> idx;
    for (auto s : sub) idx.push_back(usable[s]);
    RatMatrix m = normal_rows(ineqs, idx);
    RatVec rhs;
    for (auto i : idx) rhs.push_back(-ineqs[i].offset);
    auto sol = solve(m, rhs);
    if (!sol) return;
    for (const auto& ie : ineqs) {
      if (ie.slack(*sol) < 0) return;
    }
    out.push_back(std::move(*sol));
  });
  dedupe(out);
  return out;
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

long long to_ll(const Int& v, const char* what) {
  if (!v.fits_slong_p()) {
    throw Error(ErrorKind::BudgetExceeded, std::string(what) + " does not fit in 64 bits");
  }
  return v.get_si();
}

// Integer form of m P: rows A u >= B.
struct IntegerSystem {
  std::vector<std::vector<i128>> a;
  std::vector<i128> b;
  std::vector<long long> lo, hi;
};

IntegerSystem integer_system(const LatticePolytope& p, long long m, std::uint64_t budget) {
  p.require_bounded("lattice point enumeration");
  if (m <= 0) throw Error(ErrorKind::InvalidOperands, "lattice scale must be positive");
  const int d = p.ambient_dimension();
  IntegerSystem sys;
  for (const auto& ie : p.inequalities()) {
    long long q = to_ll(ie.offset.get_den(), "inequality denominator");
    long long num = to_ll(ie.offset.get_num(), "inequality numerator");
    std::vector<i128> row(d);
    for (int j = 0; j < d; ++j) row[j] = static_cast<i128>(ie.normal[j]) * q;
    sys.a.push_back(std::move(row));
    sys.b.push_back(-static_cast<i128>(m) * num);
  }
  sys.lo.assign(d, 0);
  sys.hi.assign(d, -1);
  long double candidates = 1;
  for (int j = 0; j < d; ++j) {
    Rat mn = p.vertices()[0][j], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    sys.lo[j] = to_ll(ceil_rat(mn * to_rat(m)), "bounding box");
    sys.hi[j] = to_ll(floor_rat(mx * to_rat(m)), "bounding box");
    candidates *= static_cast<long double>(std::max<long long>(0, sys.hi[j] - sys.lo[j] + 1));
  }
  if (candidates > static_cast<long double>(budget)) {
    throw Error(ErrorKind::BudgetExceeded,
                "lattice scan of " + std::to_string(static_cast<unsigned long long>(candidates)) +
                    " candidate points exceeds budget " + std::to_string(budget));
  }
  return sys;
}

// Admissible range of the last coordinate given the earlier ones.
bool last_range(const IntegerSystem& sys, const std::vector<long long>& prefix, int d, long long& lo,
                long long& hi) {
  lo = sys.lo[d - 1];
  hi = sys.hi[d - 1];
  for (std::size_t i = 0; i < sys.a.size(); ++i) {
    i128 rest = sys.b[i];
    for (int j = 0; j + 1 < d; ++j) rest -= sys.a[i][j] * prefix[j];
    i128 c = sys.a[i][d - 1];
    if (c == 0) {
      if (rest > 0) return false;
    } else if (c > 0) {
      lo = std::max<long long>(lo, static_cast<long long>(ceil_div(rest, c)));
    } else {
      hi = std::min<long long>(hi, static_cast<long long>(floor_div(rest, c)));
    }
  }
  return lo <= hi;
}

template <class Visit>
void scan(const IntegerSystem& sys, int d, Visit&& visit) {
  std::vector<long long> prefix(std::max(d, 1), 0);
  std::function<void(int)> rec = [&](int level) {
    if (level == d - 1) {
      long long lo, hi;
      if (last_range(sys, prefix, d, lo, hi)) visit(prefix, lo, hi);
      return;
    }
    for (long long x = sys.lo[level]; x <= sys.hi[level]; ++x) {
      prefix[level] = x;
      rec(level + 1);
    }
  };
  rec(0);
}

// 2D hull by monotone chain; returns CCW vertices without repetition.
std::vector<IntVec> monotone_chain(std::vector<IntVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const IntVec& o, const IntVec& a, const IntVec& b) {
    return static_cast<i128>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<i128>(a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<IntVec> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

i128 det3(const std::vector<std::vector<i128>>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Vector orthogonal to d-1 difference vectors in Z^d (generalized cross
// product by cofactors).
std::vector<i128> orthogonal(const std::vector<std::vector<i128>>& rows, int d) {
  std::vector<i128> n(d, 0);
  if (d == 2) {
    n[0] = -rows[0][1];
    n[1] = rows[0][0];
    return n;
  }
  for (int j = 0; j < d; ++j) {
    std::vector<std::vector<i128>> minor;
    for (const auto& r : rows) {
      std::vector<i128> mr;
      for (int c = 0; c < d; ++c) {
        if (c != j) mr.push_back(r[c]);
      }
      minor.push_back(std::move(mr));
    }
    i128 det;
    if (d == 3) {
      det = minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0];
    } else {
      det = det3(minor);
    }
    n[j] = (j % 2 == 0) ? det : -det;
  }
  return n;
}

struct HullResult {
  std::vector<Inequality> inequalities;
  std::vector<IntVec> vertices;
};

HullResult hull_full_dimensional(int d, std::vector<IntVec> pts) {
  HullResult out;
  if (d == 1) {
    auto [mn, mx] = std::minmax_element(pts.begin(), pts.end());
    out.inequalities.push_back({{1}, Rat(static_cast<long>(-(*mn)[0]))});
    out.inequalities.push_back({{-1}, Rat(static_cast<long>((*mx)[0]))});
    out.vertices = {*mn, *mx};
    return out;
  }
  if (d == 2) {
    auto h = monotone_chain(pts);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto& a = h[i];
      const auto& b = h[(i + 1) % h.size()];
      IntVec n = primitive({-(b[1] - a[1]), b[0] - a[0]});
      long long val = n[0] * a[0] + n[1] * a[1];
      out.inequalities.push_back({n, Rat(static_cast<long>(-val))});
    }
    out.vertices = h;
    return out;
  }
  // Discard points lying strictly between two others along a short lattice
  // direction; they cannot be vertices.
  std::set<IntVec> all(pts.begin(), pts.end());
  std::vector<IntVec> dirs;
  {
    IntVec dvec(d, -1);
    while (true) {
      bool positive_lead = false;
      for (auto x : dvec) {
        if (x != 0) {
          positive_lead = x > 0;
          break;
        }
      }
      if (positive_lead) dirs.push_back(dvec);
      int i = 0;
      while (i < d && dvec[i] == 1) dvec[i++] = -1;
      if (i == d) break;
      ++dvec[i];
    }
  }
  std::vector<IntVec> cand;
  for (const auto& p : pts) {
    bool interior = false;
    for (const auto& dv : dirs) {
      IntVec a = p, b = p;
      for (int j = 0; j < d; ++j) {
        a[j] += dv[j];
        b[j] -= dv[j];
      }
      if (all.count(a) && all.count(b)) {
        interior = true;
        break;
      }
    }
    if (!interior) cand.push_back(p);
  }
  std::set<std::pair<IntVec, long long>> facets;
  for_each_subset(cand.size(), static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& sub) {
    std::vector<std::vector<i128>> rows;
    const auto& p0 = cand[sub[0]];
    for (std::size_t k = 1; k < sub.size(); ++k) {
      std::vector<i128> r(d);
      for (int j = 0; j < d; ++j) r[j] = cand[sub[k]][j] - p0[j];
      rows.push_back(std::move(r));
    }
    auto n = orthogonal(rows, d);
    if (std::all_of(n.begin(), n.end(), [](i128 x) { return x == 0; })) return;
    bool pos = false, neg = false;
    for (const auto& q : cand) {
      i128 s = 0;
      for (int j = 0; j < d; ++j) s += n[j] * (q[j] - p0[j]);
      if (s > 0) pos = true;
      if (s < 0) neg = true;
      if (pos && neg) return;
    }
    IntVec nn(d);
    for (int j = 0; j < d; ++j) nn[j] = static_cast<long long>(neg ? -n[j] : n[j]);
    nn = primitive(nn);
    long long val = 0;
    for (int j = 0; j < d; ++j) val += nn[j] * p0[j];
    facets.insert({nn, val});
  });
  for (const auto& [n, val] : facets) out.inequalities.push_back({n, Rat(static_cast<long>(-val))});
  for (const auto& p : cand) {
    RatMatrix tight;
    for (const auto& [n, val] : facets) {
      long long s = 0;
      for (int j = 0; j < d; ++j) s += n[j] * p[j];
      if (s == val) tight.push_back(to_rat(n));
    }
    if (rank(tight) == static_cast<std::size_t>(d)) out.vertices.push_back(p);
  }
  return out;
}

HullResult hull_integer(int d, std::vector<IntVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  HullResult out;
  if (pts.empty()) return out;
  RatMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVec r(d);
    for (int j = 0; j < d; ++j) r[j] = Rat(static_cast<long>(pts[i][j] - pts[0][j]));
    diffs.push_back(std::move(r));
  }
  std::size_t k = diffs.empty() ? 0 : rank(diffs);
  if (k == static_cast<std::size_t>(d)) return hull_full_dimensional(d, std::move(pts));

  // Equations of the affine hull.
  for (const auto& e : nullspace(diffs, d)) {
    IntVec n = primitive_integer(e);
    long long val = 0;
    for (int j = 0; j < d; ++j) val += n[j] * pts[0][j];
    IntVec neg(n);
    for (auto& x : neg) x = -x;
    out.inequalities.push_back({n, Rat(static_cast<long>(-val))});
    out.inequalities.push_back({neg, Rat(static_cast<long>(val))});
  }
  if (k == 0) {
    out.vertices = {pts[0]};
    return out;
  }
  // Coordinates on which projection is injective on the affine hull.
  std::vector<std::size_t> coords = independent_rows(transpose(diffs));
  std::map<IntVec, IntVec> lift;
  std::vector<IntVec> projected;
  for (const auto& p : pts) {
    IntVec q;
    for (auto c : coords) q.push_back(p[c]);
    lift[q] = p;
    projected.push_back(q);
  }
  HullResult sub = hull_full_dimensional(static_cast<int>(k), projected);
  for (const auto& ie : sub.inequalities) {
    IntVec n(d, 0);
    for (std::size_t i = 0; i < coords.size(); ++i) n[coords[i]] = ie.normal[i];
    out.inequalities.push_back({n, ie.offset});
  }
  for (const auto& v : sub.vertices) out.vertices.push_back(lift.at(v));
  return out;
}

LatticePolytope polytope_from_hull(int d, HullResult h, const Rat& unscale) {
  std::vector<Inequality> ineqs;
  for (auto& ie : h.inequalities) ineqs.push_back({ie.normal, ie.offset * unscale});
  std::vector<RatVec> verts;
  for (const auto& v : h.vertices) verts.push_back(scale(unscale, to_rat(v)));
  return LatticePolytope::with_vertices(d, std::move(ineqs), std::move(verts));
}

// Scale rational points to a common integer lattice.
std::vector<IntVec> integerize(const std::vector<RatVec>& points, Int& denom) {
  denom = 1;
  for (const auto& p : points) {
    for (const auto& x : p) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<IntVec> out;
  for (const auto& p : points) {
    IntVec q(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) q[j] = to_ll(Int(p[j] * Rat(denom)), "hull coordinate");
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

Rat Inequality::slack(const RatVec& u) const { return dot(normal, u) + offset; }

LatticePolytope LatticePolytope::from_inequalities(int dim, std::vector<Inequality> inequalities) {
  if (dim < 0 || dim > kMaxAmbientDimension) {
    throw Error(ErrorKind::InvalidOperands,
                "ambient dimension " + std::to_string(dim) + " outside supported range 0..4");
  }
  for (const auto& ie : inequalities) {
    if (ie.normal.size() != static_cast<std::size_t>(dim)) {
      throw Error(ErrorKind::InvalidOperands, "inequality normal has wrong length");
    }
  }
  LatticePolytope p;
  p.dim_ = dim;
  p.inequalities_ = std::move(inequalities);
  p.vertices_ = enumerate_vertices(dim, p.inequalities_);
  p.compute_recession();
  p.finish_metadata();
  return p;
}

LatticePolytope LatticePolytope::with_vertices(int dim, std::vector<Inequality> inequalities,
                                               std::vector<RatVec> vertices) {
  LatticePolytope p;
  p.dim_ = dim;
  p.inequalities_ = std::move(inequalities);
  p.vertices_ = std::move(vertices);
  dedupe(p.vertices_);
  p.compute_recession();
  p.finish_metadata();
  return p;
}

LatticePolytope LatticePolytope::empty_polytope(int dim) {
  return from_inequalities(dim, {Inequality{IntVec(dim, 0), Rat(-1)}});
}

void LatticePolytope::compute_recession() {
  rays_.clear();
  has_lineality_ = false;
  if (dim_ == 0) return;
  std::vector<std::size_t> all(inequalities_.size());
  std::iota(all.begin(), all.end(), 0);
  RatMatrix normals = normal_rows(inequalities_, all);
  if (rank(normals) < static_cast<std::size_t>(dim_)) {
    has_lineality_ = true;
    // A region with lineality has no vertices; decide emptiness on the
    // orthogonal complement of the lineality space.
    if (vertices_.empty()) {
      auto lin = nullspace(normals, dim_);
      std::vector<Inequality> aug = inequalities_;
      for (const auto& l : lin) {
        IntVec n = primitive_integer(l);
        IntVec neg(n);
        for (auto& x : neg) x = -x;
        aug.push_back({n, Rat(0)});
        aug.push_back({neg, Rat(0)});
      }
      auto pts = enumerate_vertices(dim_, aug);
      empty_ = pts.empty();
    }
    return;
  }
  std::vector<RatVec> rays;
  for_each_subset(inequalities_.size(), static_cast<std::size_t>(dim_ - 1),
                  [&](const std::vector<std::size_t>& sub) {
                    RatMatrix m = normal_rows(inequalities_, sub);
                    auto ns = nullspace(m, dim_);
                    if (ns.size() != 1) return;
                    for (int sign : {1, -1}) {
                      RatVec r = scale(Rat(sign), ns[0]);
                      bool ok = true;
                      for (const auto& ie : inequalities_) {
                        if (dot(ie.normal, r) < 0) {
                          ok = false;
                          break;
                        }
                      }
                      if (ok) rays.push_back(to_rat(primitive_integer(r)));
                    }
                  });
  dedupe(rays);
  rays_ = std::move(rays);
}

void LatticePolytope::finish_metadata() {
  if (!vertices_.empty()) empty_ = false;
  else if (!has_lineality_) empty_ = true;
  if (empty_) {
    rays_.clear();
    has_lineality_ = false;
    affine_dim_ = -1;
    return;
  }
  if (has_lineality_) {
    affine_dim_ = dim_;  // not tracked precisely for non-pointed regions
    return;
  }
  std::vector<RatVec> span = vertices_;
  for (const auto& r : rays_) span.push_back(add(vertices_[0], r));
  affine_dim_ = static_cast<int>(affine_rank(span));
}

bool LatticePolytope::contains(const RatVec& u) const {
  if (empty_) return false;
  for (const auto& ie : inequalities_) {
    if (ie.slack(u) < 0) return false;
  }
  return true;
}

bool LatticePolytope::contains(const LatticePolytope& other) const {
  if (other.empty_) return true;
  if (empty_) return false;
  for (const auto& v : other.vertices_) {
    if (!contains(v)) return false;
  }
  for (const auto& r : other.rays_) {
    for (const auto& ie : inequalities_) {
      if (dot(ie.normal, r) < 0) return false;
    }
  }
  if (other.has_lineality_ && !has_lineality_) return false;
  return true;
}

LatticePolytope LatticePolytope::scaled(const Rat& factor) const {
  if (factor <= 0) throw Error(ErrorKind::InvalidOperands, "polytope scale factor must be positive");
  LatticePolytope p = *this;
  for (auto& ie : p.inequalities_) ie.offset *= factor;
  for (auto& v : p.vertices_) v = scale(factor, v);
  return p;
}

LatticePolytope LatticePolytope::translated(const RatVec& shift) const {
  LatticePolytope p = *this;
  for (auto& ie : p.inequalities_) ie.offset -= dot(ie.normal, shift);
  for (auto& v : p.vertices_) v = add(v, shift);
  return p;
}

void LatticePolytope::require_bounded(const char* operation) const {
  if (!is_bounded()) {
    throw Error(ErrorKind::UnboundedPolytope, std::string(operation) + " requires a bounded polytope");
  }
}

LatticePolytope build_polytope(int dim, std::vector<Inequality> inequalities) {
  return LatticePolytope::from_inequalities(dim, std::move(inequalities));
}

Int lattice_point_count(const LatticePolytope& p, long long m, std::uint64_t budget) {
  if (p.is_empty()) return 0;
  const int d = p.ambient_dimension();
  if (d == 0) return 1;
  auto sys = integer_system(p, m, budget);
  Int total = 0;
  long long acc = 0;
  scan(sys, d, [&](const std::vector<long long>&, long long lo, long long hi) {
    acc += hi - lo + 1;
    if (acc > (1LL << 60)) {
      total += Int(static_cast<long>(acc));
      acc = 0;
    }
  });
  total += Int(static_cast<long>(acc));
  return total;
}

std::vector<IntVec> lattice_points(const LatticePolytope& p, long long m, std::uint64_t budget) {
  std::vector<IntVec> out;
  if (p.is_empty()) return out;
  const int d = p.ambient_dimension();
  if (d == 0) {
    out.push_back(IntVec{});
    return out;
  }
  auto sys = integer_system(p, m, budget);
  scan(sys, d, [&](const std::vector<long long>& prefix, long long lo, long long hi) {
    for (long long x = lo; x <= hi; ++x) {
      IntVec u(prefix.begin(), prefix.begin() + (d - 1));
      u.push_back(x);
      out.push_back(std::move(u));
    }
  });
  return out;
}

Rat euclidean_volume(const LatticePolytope& p) {
  if (p.is_empty()) return 0;
  p.require_bounded("volume");
  const int d = p.ambient_dimension();
  if (d == 0) return 1;
  if (!p.is_full_dimensional()) return 0;
  const auto& verts = p.vertices();
  // Facets as vertex index sets.
  std::set<std::vector<std::size_t>> facet_set;
  for (const auto& ie : p.inequalities()) {
    std::vector<std::size_t> tight;
    std::vector<RatVec> pts;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (ie.slack(verts[i]) == 0) {
        tight.push_back(i);
        pts.push_back(verts[i]);
      }
    }
    if (pts.size() >= static_cast<std::size_t>(d) && affine_rank(pts) == static_cast<std::size_t>(d - 1)) {
      facet_set.insert(tight);
    }
  }
  std::vector<std::vector<std::size_t>> facets(facet_set.begin(), facet_set.end());

  auto rank_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<RatVec> pts;
    for (auto i : idx) pts.push_back(verts[i]);
    return affine_rank(pts);
  };

  // Pulling triangulation: cone from the first vertex of each face over the
  // faces of that face not containing it.
  std::function<void(const std::vector<std::size_t>&, int, std::vector<std::vector<std::size_t>>&)> tri;
  tri = [&](const std::vector<std::size_t>& f, int k, std::vector<std::vector<std::size_t>>& out) {
    if (k == 0) {
      out.push_back({f[0]});
      return;
    }
    std::size_t apex = f[0];
    std::set<std::vector<std::size_t>> seen;
    for (const auto& g : facets) {
      std::vector<std::size_t> sub;
      std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(sub));
      if (sub.empty() || sub.size() == f.size()) continue;
      if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
      if (static_cast<int>(rank_of(sub)) != k - 1) continue;
      if (!seen.insert(sub).second) continue;
      std::vector<std::vector<std::size_t>> pieces;
      tri(sub, k - 1, pieces);
      for (auto& s : pieces) {
        s.push_back(apex);
        out.push_back(std::move(s));
      }
    }
  };
  std::vector<std::size_t> all(verts.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<std::size_t>> simplices;
  tri(all, d, simplices);
  Rat total = 0;
  for (const auto& s : simplices) {
    RatMatrix m;
    for (std::size_t i = 1; i < s.size(); ++i) m.push_back(sub(verts[s[i]], verts[s[0]]));
    Rat det = determinant(m);
    total += det < 0 ? Rat(-det) : det;
  }
  Rat fact = 1;
  for (int i = 2; i <= d; ++i) fact *= i;
  return total / fact;
}

Rat normalized_volume(const LatticePolytope& p) {
  Rat fact = 1;
  for (int i = 2; i <= p.ambient_dimension(); ++i) fact *= i;
  return fact * euclidean_volume(p);
}

LatticePolytope face(const LatticePolytope& p, const IntVec& normal, const Rat& offset) {
  const int d = p.ambient_dimension();
  if (d == 0 || normal.size() != static_cast<std::size_t>(d)) {
    throw Error(ErrorKind::InvalidOperands, "face normal has wrong length");
  }
  long long g = 0;
  for (auto x : normal) g = gcd_ll(g, x);
  if (g == 0) throw Error(ErrorKind::InvalidOperands, "face normal is zero");
  IntVec n(normal);
  for (auto& x : n) x /= g;
  Rat level = -offset / Rat(static_cast<long>(g));  // hyperplane <u, n> = level
  if (p.is_empty()) return LatticePolytope::empty_polytope(d - 1);
  p.require_bounded("face");
  Rat lo = dot(n, p.vertices()[0]), hi = lo;
  for (const auto& v : p.vertices()) {
    Rat val = dot(n, v);
    lo = std::min(lo, val);
    hi = std::max(hi, val);
  }
  if (level < lo || level > hi) return LatticePolytope::empty_polytope(d - 1);
  if (level > lo && level < hi) {
    throw Error(ErrorKind::NotAFace, "hyperplane cuts the interior of the polytope");
  }
  // Unimodular W with n W = e_d: reduce the row vector by integer column ops.
  std::vector<IntVec> w(d, IntVec(d, 0));  // w[col] = column vector
  for (int i = 0; i < d; ++i) w[i][i] = 1;
  IntVec r(n);
  while (true) {
    int piv = -1;
    int nonzero = 0;
    for (int i = 0; i < d; ++i) {
      if (r[i] == 0) continue;
      ++nonzero;
      if (piv < 0 || std::llabs(r[i]) < std::llabs(r[piv])) piv = i;
    }
    if (nonzero <= 1) {
      if (r[piv] < 0) {
        r[piv] = -r[piv];
        for (auto& x : w[piv]) x = -x;
      }
      std::swap(r[piv], r[d - 1]);
      std::swap(w[piv], w[d - 1]);
      break;
    }
    for (int i = 0; i < d; ++i) {
      if (i == piv || r[i] == 0) continue;
      long long q = r[i] / r[piv];
      r[i] -= q * r[piv];
      for (int j = 0; j < d; ++j) w[i][j] -= q * w[piv][j];
    }
  }
  std::vector<Inequality> ineqs;
  for (const auto& ie : p.inequalities()) {
    IntVec wt(d);  // W^T normal
    for (int c = 0; c < d; ++c) {
      long long s = 0;
      for (int j = 0; j < d; ++j) s += w[c][j] * ie.normal[j];
      wt[c] = s;
    }
    Rat off = ie.offset + level * Rat(static_cast<long>(wt[d - 1]));
    wt.pop_back();
    ineqs.push_back({wt, off});
  }
  return LatticePolytope::from_inequalities(d - 1, std::move(ineqs));
}

LatticePolytope convex_hull(int dim, const std::vector<RatVec>& points) {
  if (dim < 1 || dim > kMaxAmbientDimension) {
    throw Error(ErrorKind::InvalidOperands, "hull dimension outside 1..4");
  }
  if (points.empty()) return LatticePolytope::empty_polytope(dim);
  Int denom;
  auto ints = integerize(points, denom);
  return polytope_from_hull(dim, hull_integer(dim, std::move(ints)), Rat(1) / Rat(denom));
}

LatticePolytope hull_of_lattice_points(const LatticePolytope& p, long long m, std::uint64_t budget) {
  const int d = p.ambient_dimension();
  if (p.is_empty()) return LatticePolytope::empty_polytope(d);
  auto pts = lattice_points(p, m, budget);
  if (pts.empty()) return LatticePolytope::empty_polytope(d);
  if (d == 0) return p;
  return polytope_from_hull(d, hull_integer(d, std::move(pts)), Rat(1));
}

LatticePolytope newton_region(int dim, const std::vector<RatVec>& points) {
  if (points.empty()) return LatticePolytope::empty_polytope(dim);
  Int denom;
  auto ints = integerize(points, denom);
  long long lo = ints[0][0], hi = lo;
  for (const auto& p : ints) {
    for (auto x : p) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  long long reach = 1 + 2 * (hi - lo);
  std::vector<IntVec> aug = ints;
  for (const auto& p : ints) {
    for (int j = 0; j < dim; ++j) {
      IntVec q = p;
      q[j] += reach;
      aug.push_back(std::move(q));
    }
  }
  auto h = hull_integer(dim, std::move(aug));
  std::vector<Inequality> ineqs;
  Rat unscale = Rat(1) / Rat(denom);
  for (const auto& ie : h.inequalities) {
    bool nonneg = std::all_of(ie.normal.begin(), ie.normal.end(), [](long long x) { return x >= 0; });
    if (nonneg) ineqs.push_back({ie.normal, ie.offset * unscale});
  }
  return LatticePolytope::from_inequalities(dim, std::move(ineqs));
}

bool is_newton_region(const LatticePolytope& p) {
  if (p.is_empty()) return false;
  for (const auto& ie : p.inequalities()) {
    for (auto x : ie.normal) {
      if (x < 0) return false;
    }
  }
  return !p.is_bounded();
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
  const int d = p.ambient_dimension();
  if (q.ambient_dimension() != d) {
    throw Error(ErrorKind::InvalidOperands, "Minkowski sum of polytopes in different dimensions");
  }
  if (p.is_empty() || q.is_empty()) return LatticePolytope::empty_polytope(d);
  std::vector<RatVec> sums;
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) sums.push_back(add(a, b));
  }
  if (p.is_bounded() && q.is_bounded()) {
    if (d == 0) return p;
    return convex_hull(d, sums);
  }
  if (is_newton_region(p) && is_newton_region(q)) return newton_region(d, sums);
  throw Error(ErrorKind::InvalidOperands,
              "Minkowski sum needs two bounded polytopes or two upward-closed Newton regions");
}

}  // namespace asymvol
