#include "asymvol/volume.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "asymvol/error.hpp"

namespace asymvol {

const char* to_string(Provenance p) {
  return p == Provenance::ClosedForm ? "closed_form" : "oracle_extrapolated";
}

std::string VolumeResult::to_string() const {
  if (provenance == Provenance::ClosedForm) return value.to_string() + " (closed_form)";
  return value.to_decimal(12) + " (oracle_extrapolated, m=" + std::to_string(max_m) + ")";
}

namespace {

Int factorial(unsigned n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Int binomial(const Int& n, unsigned k) {
  if (n < 0) return 0;
  Int out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

Int as_integer(const Rat& x, const char* what) {
  if (!is_integer(x)) {
    throw Error(ErrorKind::UnsupportedClass, std::string(what) + " must be integral, got " + format_rat(x));
  }
  return x.get_num();
}

long long as_ll(const Int& x, const char* what) {
  if (!x.fits_slong_p()) throw Error(ErrorKind::BudgetExceeded, std::string(what) + " does not fit in 64 bits");
  return x.get_si();
}

void check_terms(const Int& terms, std::uint64_t budget) {
  if (terms > Int(std::to_string(budget))) {
    throw Error(ErrorKind::BudgetExceeded, "section sum with " + terms.get_str() + " terms exceeds budget " +
                                               std::to_string(budget));
  }
}

VolumeResult closed(QuadExt v, std::string detail = {}) {
  VolumeResult r;
  r.value = std::move(v);
  r.detail = std::move(detail);
  return r;
}

RatVec toric_lift(const ToricModel& t, const NSClass& cls) { return divisor_of_class(t, cls); }

LatticePolytope big_polytope(const ToricModel& t, const NSClass& cls) {
  auto p = toric_polytope(t, toric_lift(t, cls));
  if (!p.is_full_dimensional()) {
    throw Error(ErrorKind::NotBig, "class " + format_class(cls) + " is not big on " + t.name);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Cutkosky

struct CutkoskySegmentData {
  Rat qp, bpw, qw;  // q(p), B(p, w), q(w) with p = a + c, w = b - a
  QuadExt sigma;
};

CutkoskySegmentData cutkosky_data(const CutkoskyModel& m, const RatVec& c) {
  if (c.size() != 3) throw Error(ErrorKind::UnsupportedClass, "Cutkosky twist must have 3 coordinates");
  RatVec p = add(m.a.coords, c);
  RatVec w = sub(m.b.coords, m.a.coords);
  auto seg = nef_segment(m.base, p, w);
  if (!seg || seg->lo.sign() != 0) {
    throw Error(ErrorKind::UnsupportedClass, "a + c = (" + format_class(NSClass(p)) +
                                                 ") is not nef; the volume formula covers only that chamber");
  }
  const auto& g = m.base.gram;
  return {bilinear(g, p, p), bilinear(g, p, w), bilinear(g, w, w), seg->hi};
}

QuadExt cutkosky_volume(const CutkoskyModel& m, const NSClass& cls, std::string& detail) {
  const Rat& s = cls[0];
  if (s <= 0) {
    detail = "s <= 0";
    return QuadExt(0);
  }
  RatVec c = {cls[1] / s, cls[2] / s, cls[3] / s};
  auto d = cutkosky_data(m, c);
  const QuadExt& t = d.sigma;
  QuadExt v = QuadExt(3 * d.qp) * t + QuadExt(3 * d.bpw) * t * t + QuadExt(d.qw) * t * t * t;
  detail = "sigma = " + t.to_string();
  return QuadExt(s * s * s) * v;
}

Int cutkosky_h0(const CutkoskyModel& m, const NSClass& cls, long long level, std::uint64_t budget) {
  Int s = as_integer(cls[0], "Serre coefficient");
  RatVec c(3);
  for (int i = 0; i < 3; ++i) c[i] = Rat(as_integer(cls[i + 1], "twist coordinate"));
  if (s < 0) return 0;
  Int top = s * static_cast<long>(level);
  check_terms(top + 1, budget);
  const long long n = as_ll(top, "level");
  const auto cone = m.base.nef_cone();
  RatVec mc = scale(to_rat(level), c);
  Int total = 0;
  for (long long t = 0; t <= n; ++t) {
    RatVec ct = add(add(scale(to_rat(n - t), m.a.coords), scale(to_rat(t), m.b.coords)), mc);
    if (cone.classify(ct) == ConeMembership::Interior) {
      Rat half = bilinear(m.base.gram, ct, ct) / 2;
      total += as_integer(half, "q/2 of an ample class");
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Split ruled

Rat split_ruled_volume(const SplitRuledModel& r, const NSClass& cls) {
  const Rat& s = cls[0];
  if (s <= 0) return 0;
  Rat l0 = s * to_rat(r.d2) + cls[1];
  Rat l1 = s * to_rat(r.d1) + cls[1];
  if (l0 >= 0 && l1 >= 0) return s * (l0 + l1);
  if (l0 <= 0 && l1 <= 0) return 0;
  Rat hi = std::max(l0, l1);
  Rat gap = l0 - l1;
  if (gap < 0) gap = -gap;
  return s * hi * hi / gap;
}

Int elliptic_h0(const Int& degree) {
  if (degree > 0) return degree;
  return degree == 0 ? Int(1) : Int(0);
}

Int split_ruled_h0(const SplitRuledModel& r, const NSClass& cls, long long level, std::uint64_t budget) {
  Int s = as_integer(cls[0], "Serre coefficient");
  Int k = as_integer(cls[1], "fibre coefficient");
  if (s < 0) return 0;
  Int top = s * static_cast<long>(level);
  check_terms(top + 1, budget);
  const long long n = as_ll(top, "level");
  Int total = 0;
  for (long long i = 0; i <= n; ++i) {
    Int deg = Int(static_cast<long>(r.d1 * i + r.d2 * (n - i))) + k * static_cast<long>(level);
    total += elliptic_h0(deg);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Abelian surface

Rat abelian_q(const AbelianSurfaceModel& a, const NSClass& cls) { return bilinear(a.gram, cls.coords, cls.coords); }

const AbelianSurfaceModel* abelian_of(const Model& model, const NSClass& cls) {
  if (auto* a = std::get_if<AbelianSurfaceModel>(&model)) return a;
  if (auto* c = std::get_if<CutkoskyModel>(&model)) {
    if (cls.size() == 3) return &c->base;
  }
  return nullptr;
}

}  // namespace

// ---------------------------------------------------------------------------
// Blow-up closed forms

Rat blowup_volume(int d, const Rat& x, const Rat& y) {
  if (x < 0) return 0;
  if (y <= 0) return pow_rat(x, d);
  if (y <= x) return pow_rat(x, d) - pow_rat(y, d);
  return 0;
}

HhatVector blowup_hhat(int d, const Rat& x, const Rat& y) {
  HhatVector h;
  h.values.assign(d + 1, Rat(0));
  auto p = [d](const Rat& v) { return pow_rat(v < 0 ? Rat(-v) : v, d); };
  if (x >= 0 && y >= 0 && y <= x) {
    h.values[0] += p(x) - p(y);
  } else if (x >= 0 && y <= 0) {
    h.values[0] += p(x);
    h.values[d - 1] += p(y);
  } else if (x >= 0 && y >= x) {
    h.values[1] += p(y) - p(x);
  } else if (x <= 0 && y <= 0 && y >= x) {
    h.values[d] += p(x) - p(y);
  } else if (x <= 0 && y >= 0) {
    h.values[d] += p(x);
    h.values[1] += p(y);
  } else {
    h.values[d - 1] += p(y) - p(x);
  }
  return h;
}

// ---------------------------------------------------------------------------

VolumeResult vol(const Model& model, const NSClass& cls) {
  require_rank(model, cls);
  if (const auto* b = std::get_if<BlowupPdModel>(&model)) {
    Rat x = cls[0], y = -cls[1];
    std::string chamber = x < 0 ? "zero" : (y <= 0 ? "x^d" : (y <= x ? "x^d - y^d" : "zero"));
    return closed(QuadExt(blowup_volume(b->dim, x, y)), "chamber " + chamber);
  }
  if (const auto* t = std::get_if<ToricModel>(&model)) {
    Rat v = toric_volume_divisor(*t, toric_lift(*t, cls));
    return closed(QuadExt(v), v == 0 ? "not big" : "lattice volume of P_D");
  }
  if (const auto* s = std::get_if<SurfaceModel>(&model)) {
    if (!big_test(model, cls)) return closed(QuadExt(0), "not big");
    auto z = zariski(*s, cls);
    std::string supp;
    for (auto i : z.support) supp += (supp.empty() ? "" : ",") + std::to_string(i);
    return closed(QuadExt(bilinear(s->gram, z.positive.coords, z.positive.coords)),
                  "zariski support {" + supp + "}");
  }
  if (const auto* a = std::get_if<AbelianSurfaceModel>(&model)) {
    if (!nef_test(model, cls)) return closed(QuadExt(0), "not pseudoeffective");
    return closed(QuadExt(abelian_q(*a, cls)), "q(xi)");
  }
  if (const auto* c = std::get_if<CutkoskyModel>(&model)) {
    std::string detail;
    QuadExt v = cutkosky_volume(*c, cls, detail);
    return closed(v, detail);
  }
  const auto& r = std::get<SplitRuledModel>(model);
  return closed(QuadExt(split_ruled_volume(r, cls)), "degree integral");
}

Int h0_toric_divisor(const ToricModel& model, const RatVec& divisor, long long m, std::uint64_t budget) {
  for (const auto& a : divisor) as_integer(a, "divisor coefficient");
  if (m < 0) throw Error(ErrorKind::InvalidOperands, "level m must be nonnegative");
  return lattice_point_count(toric_polytope(model, divisor), m, budget);
}

Int h0_exact(const Model& model, const NSClass& cls, long long m, std::uint64_t budget) {
  require_rank(model, cls);
  if (m < 0) throw Error(ErrorKind::InvalidOperands, "level m must be nonnegative");
  if (const auto* b = std::get_if<BlowupPdModel>(&model)) {
    Int a = as_integer(cls[0], "h coefficient") * static_cast<long>(m);
    Int c = -as_integer(cls[1], "e coefficient") * static_cast<long>(m);
    if (a < 0 || c > a) return 0;
    // Monomials of degree k in d variables for max(c, 0) <= k <= a.
    const unsigned d = static_cast<unsigned>(b->dim);
    Int lo = c > 0 ? c : Int(0);
    return binomial(a + d, d) - binomial(lo - 1 + d, d);
  }
  if (const auto* t = std::get_if<ToricModel>(&model)) return h0_toric_divisor(*t, toric_lift(*t, cls), m, budget);
  if (const auto* c = std::get_if<CutkoskyModel>(&model)) {
    if (cls.size() == 4) return cutkosky_h0(*c, cls, m, budget);
  }
  if (const auto* a = abelian_of(model, cls)) {
    for (const auto& x : cls.coords) as_integer(x, "class coordinate");
    auto where = a->nef_cone().classify(scale(to_rat(m), cls.coords));
    if (m == 0) return 1;
    if (where == ConeMembership::Interior) return as_integer(abelian_q(*a, cls) * to_rat(m) * to_rat(m) / 2, "q/2");
    if (where == ConeMembership::Outside) return 0;
    throw Error(ErrorKind::UnsupportedClass, "h0 of a nef, non-ample class depends on more than its numerical class");
  }
  if (const auto* r = std::get_if<SplitRuledModel>(&model)) return split_ruled_h0(*r, cls, m, budget);
  throw Error(ErrorKind::UnsupportedModel, "no section count available for " + model_name(model));
}

std::vector<long long> geometric_schedule(long long to) {
  std::vector<long long> out;
  for (long long m = 1; m < to; m *= 2) out.push_back(m);
  out.push_back(to);
  return out;
}

VolumeResult vol_oracle(const Model& model, const NSClass& cls, const std::vector<long long>& schedule,
                        std::uint64_t budget) {
  if (schedule.empty()) throw Error(ErrorKind::InvalidOperands, "empty m schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] <= 0 || (i && schedule[i] <= schedule[i - 1])) {
      throw Error(ErrorKind::InvalidOperands, "m schedule must be positive and strictly increasing");
    }
  }
  int d = dimension(model);
  if (const auto* c = std::get_if<CutkoskyModel>(&model); c && cls.size() == 3) d = 2;
  const Int df = factorial(static_cast<unsigned>(d));
  VolumeResult r;
  r.provenance = Provenance::OracleExtrapolated;
  for (long long m : schedule) {
    Int h = h0_exact(model, cls, m, budget);
    Rat md = pow_rat(to_rat(m), static_cast<unsigned>(d));
    r.sequence.push_back({m, Rat(df * h) / md});
  }
  r.max_m = schedule.back();
  r.value = QuadExt(r.sequence.back().value);
  if (r.sequence.size() > 1) {
    Rat diff = r.sequence.back().value - r.sequence[r.sequence.size() - 2].value;
    r.error_estimate = std::fabs(diff.get_d());
  }
  r.detail = "d!*h0(mD)/m^d";
  return r;
}

ZariskiDecomposition zariski(const SurfaceModel& model, const NSClass& cls) {
  if (cls.size() != model.gram.size()) {
    throw Error(ErrorKind::UnsupportedClass, "class " + format_class(cls) + " has wrong length for " + model.name);
  }
  auto split = surface_split(model, cls);
  auto support_gram = [&] {
    RatMatrix g;
    for (auto i : split.support) {
      RatVec row;
      for (auto j : split.support) {
        row.push_back(bilinear(model.gram, model.negative_curves[i].coords, model.negative_curves[j].coords));
      }
      g.push_back(row);
    }
    return g;
  };
  if (!split.solvable || (!split.support.empty() && !negative_definite(support_gram()))) {
    throw Error(ErrorKind::InvalidModel, model.name + ": selected negative curves do not have a negative definite "
                                                      "intersection matrix");
  }
  if (!nef_test(model, split.positive)) {
    throw Error(ErrorKind::NotPseudoeffective, "class " + format_class(cls) + " is not pseudoeffective");
  }
  for (const auto& c : split.coefficients) {
    if (c <= 0) {
      throw Error(ErrorKind::InvalidModel, model.name + ": Zariski iteration produced a non-positive coefficient");
    }
  }
  ZariskiDecomposition z;
  z.positive = split.positive;
  z.negative = cls - split.positive;
  z.support = split.support;
  z.coefficients = split.coefficients;
  for (auto i : z.support) {
    if (bilinear(model.gram, z.positive.coords, model.negative_curves[i].coords) != 0) {
      throw Error(ErrorKind::InvalidModel, "Zariski positive part is not orthogonal to its support");
    }
  }
  return z;
}

QuadExt sigma(const CutkoskyModel& model, const RatVec& c) { return cutkosky_data(model, c).sigma; }

HhatVector hhat(const Model& model, const NSClass& cls) {
  if (const auto* b = std::get_if<BlowupPdModel>(&model)) {
    require_rank(model, cls);
    return blowup_hhat(b->dim, cls[0], -cls[1]);
  }
  if (const auto* a = abelian_of(model, cls)) {
    if (cls.size() != 3) throw Error(ErrorKind::UnsupportedClass, "abelian surface classes have 3 coordinates");
    HhatVector h;
    h.values.assign(3, Rat(0));
    Rat q = abelian_q(*a, cls);
    Rat b = bilinear(a->gram, cls.coords, a->ample.coords);
    if (q > 0) h.values[b > 0 ? 0 : 2] = q;
    else if (q < 0) h.values[1] = -q;
    return h;
  }
  throw Error(ErrorKind::UnsupportedModel, "asymptotic cohomology is available for abelian surfaces and Bl_p P^d only");
}

Rat toric_volume_divisor(const ToricModel& model, const RatVec& divisor) {
  auto p = toric_polytope(model, divisor);
  return p.is_full_dimensional() ? normalized_volume(p) : Rat(0);
}

Rat toric_ord_divisor(const ToricModel& model, std::size_t ray, const RatVec& divisor) {
  if (ray >= model.rays.size()) {
    throw Error(ErrorKind::InvalidOperands, "ray index " + std::to_string(ray) + " out of range");
  }
  auto p = toric_polytope(model, divisor);
  if (!p.is_full_dimensional()) throw Error(ErrorKind::NotBig, "divisor is not big on " + model.name);
  Rat best;
  bool first = true;
  for (const auto& v : p.vertices()) {
    Rat val = dot(model.rays[ray], v) + divisor[ray];
    if (first || val < best) best = val;
    first = false;
  }
  return best;
}

Rat toric_restricted_vol_divisor(const ToricModel& model, std::size_t ray, const RatVec& divisor) {
  if (toric_ord_divisor(model, ray, divisor) > 0) return 0;
  if (model.dim == 1) return 1;
  auto p = toric_polytope(model, divisor);
  return normalized_volume(face(p, model.rays[ray], divisor[ray]));
}

Rat ord(const Model& model, std::size_t index, const NSClass& cls) {
  require_rank(model, cls);
  if (const auto* t = as_toric(model)) {
    if (!big_test(model, cls)) throw Error(ErrorKind::NotBig, "class " + format_class(cls) + " is not big");
    return toric_ord_divisor(*t, index, toric_lift(*t, cls));
  }
  if (const auto* s = std::get_if<SurfaceModel>(&model)) {
    if (index >= s->negative_curves.size()) {
      throw Error(ErrorKind::InvalidOperands, "curve index " + std::to_string(index) + " out of range");
    }
    if (!big_test(model, cls)) throw Error(ErrorKind::NotBig, "class " + format_class(cls) + " is not big");
    auto z = zariski(*s, cls);
    for (std::size_t k = 0; k < z.support.size(); ++k) {
      if (z.support[k] == index) return z.coefficients[k];
    }
    return 0;
  }
  throw Error(ErrorKind::UnsupportedModel, "ord is available on toric and surface models only");
}

Rat restricted_vol(const ToricModel& model, std::size_t ray, const NSClass& cls) {
  if (cls.size() != model.basis_divisors.size()) {
    throw Error(ErrorKind::UnsupportedClass, "class " + format_class(cls) + " has wrong length for " + model.name);
  }
  RatVec a = toric_lift(model, cls);
  if (!toric_polytope(model, a).is_full_dimensional()) {
    throw Error(ErrorKind::NotBig, "class " + format_class(cls) + " is not big");
  }
  return toric_restricted_vol_divisor(model, ray, a);
}

BaseLocusProbe augmented_base_locus_probe(const ToricModel& model, const NSClass& cls, std::vector<Rat> epsilons) {
  Model m = model;
  if (!big_test(m, cls)) throw Error(ErrorKind::NotBig, "class " + format_class(cls) + " is not big");
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  BaseLocusProbe out;
  out.epsilons = epsilons;
  for (const auto& eps : epsilons) {
    NSClass shifted = cls - eps * model.ample;
    if (!big_test(m, shifted)) {
      throw Error(ErrorKind::NotBig, "xi - eps*A is not big at eps = " + format_rat(eps) + "; use a smaller grid");
    }
    std::vector<std::size_t> rays;
    for (std::size_t i = 0; i < model.rays.size(); ++i) {
      if (ord(m, i, shifted) > 0) rays.push_back(i);
    }
    out.rays_per_epsilon.push_back(rays);
  }
  for (std::size_t k = 1; k < out.rays_per_epsilon.size(); ++k) {
    if (out.rays_per_epsilon[k] != out.rays_per_epsilon[0]) out.consistent = false;
  }
  if (!out.rays_per_epsilon.empty()) out.rays = out.rays_per_epsilon.back();
  for (auto i : out.rays) {
    std::vector<Rat> seq;
    for (const auto& eps : epsilons) seq.push_back(restricted_vol(model, i, cls + eps * model.ample));
    seq.push_back(restricted_vol(model, i, cls));
    bool ok = seq.back() == 0;
    for (std::size_t k = 1; k < seq.size(); ++k) ok = ok && seq[k] < seq[k - 1];
    out.cross_validated = out.cross_validated && ok;
    out.approach.push_back(std::move(seq));
  }
  return out;
}

std::vector<FujitaStep> fujita_sweep(const Model& model, const NSClass& cls, const std::vector<long long>& schedule,
                                     std::uint64_t budget) {
  require_rank(model, cls);
  std::vector<FujitaStep> out;
  if (const auto* t = as_toric(model)) {
    RatVec a = toric_lift(*t, cls);
    for (const auto& x : a) as_integer(x, "divisor coefficient");
    auto p = big_polytope(*t, cls);
    for (long long m : schedule) {
      if (m <= 0) throw Error(ErrorKind::InvalidOperands, "levels must be positive");
      auto hull = hull_of_lattice_points(p, m, budget);
      Rat v = hull.is_empty() ? Rat(0) : normalized_volume(hull);
      out.push_back({m, v / pow_rat(to_rat(m), static_cast<unsigned>(t->dim))});
    }
    return out;
  }
  if (const auto* c = std::get_if<CutkoskyModel>(&model)) {
    if (!big_test(model, cls)) throw Error(ErrorKind::NotBig, "class " + format_class(cls) + " is not big");
    for (long long m : schedule) {
      if (m <= 0) throw Error(ErrorKind::InvalidOperands, "levels must be positive");
      Int h = cutkosky_h0(*c, cls, m, budget);
      out.push_back({m, Rat(6 * h) / pow_rat(to_rat(m), 3)});
    }
    return out;
  }
  throw Error(ErrorKind::UnsupportedModel, "Fujita sweeps are available on toric and Cutkosky models only");
}

bool ampleness_probe(const Model& model, const NSClass& cls, const Rat& radius, int samples) {
  if (samples < 1) throw Error(ErrorKind::InvalidOperands, "ampleness probe needs at least one sample per axis");
  const std::size_t rho = cls.size();
  const Rat step = radius / samples;
  std::vector<long> k(rho, -samples);
  while (true) {
    NSClass p = cls;
    for (std::size_t i = 0; i < rho; ++i) p[i] += step * Rat(k[i]);
    auto h = hhat(model, p);
    for (std::size_t i = 1; i < h.values.size(); ++i) {
      if (h.values[i] != 0) return false;
    }
    std::size_t i = 0;
    while (i < rho && k[i] == samples) k[i++] = -samples;
    if (i == rho) break;
    ++k[i];
  }
  return true;
}

}  // namespace asymvol
