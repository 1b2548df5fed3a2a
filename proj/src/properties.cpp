#include "asymvol/properties.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "asymvol/error.hpp"
#include "asymvol/linalg.hpp"
#include "json.hpp"

namespace asymvol {

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int model_dimension(const Model& model) { return dimension(model); }

// Closed interval [lo, hi] around a + b sqrt(D), directed rounding only.
class Enclosure {
 public:
  explicit Enclosure(mpfr_prec_t prec = 256) { mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr)); }
  ~Enclosure() { mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr)); }
  Enclosure(const Enclosure&) = delete;
  Enclosure& operator=(const Enclosure&) = delete;

  void set(const QuadExt& v) {
    mpfr_t a_lo, a_hi, s_lo, s_hi;
    mpfr_inits2(mpfr_get_prec(lo), a_lo, a_hi, s_lo, s_hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_q(a_lo, v.rational_part().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(a_hi, v.rational_part().get_mpq_t(), MPFR_RNDU);
    mpfr_set_z(s_lo, v.discriminant().get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(s_hi, v.discriminant().get_mpz_t(), MPFR_RNDU);
    mpfr_sqrt(s_lo, s_lo, MPFR_RNDD);
    mpfr_sqrt(s_hi, s_hi, MPFR_RNDU);
    const Rat& b = v.radical_coefficient();
    if (b >= 0) {
      mpfr_mul_q(s_lo, s_lo, b.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(s_hi, s_hi, b.get_mpq_t(), MPFR_RNDU);
      mpfr_add(lo, a_lo, s_lo, MPFR_RNDD);
      mpfr_add(hi, a_hi, s_hi, MPFR_RNDU);
    } else {
      // b < 0: the smallest product uses the largest root.
      mpfr_mul_q(s_hi, s_hi, b.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(s_lo, s_lo, b.get_mpq_t(), MPFR_RNDU);
      mpfr_add(lo, a_lo, s_hi, MPFR_RNDD);
      mpfr_add(hi, a_hi, s_lo, MPFR_RNDU);
    }
    mpfr_clears(a_lo, a_hi, s_lo, s_hi, static_cast<mpfr_ptr>(nullptr));
    if (mpfr_sgn(lo) < 0) mpfr_set_zero(lo, 1);
    if (mpfr_sgn(hi) < 0) mpfr_set_zero(hi, 1);
  }

  void root(unsigned d) {
    mpfr_rootn_ui(lo, lo, d, MPFR_RNDD);
    mpfr_rootn_ui(hi, hi, d, MPFR_RNDU);
  }

  mpfr_t lo, hi;
};

std::vector<Rat> proportional_factor(const NSClass& a, const NSClass& b) {
  // Returns {c} with b = c a and c > 0, or {} when not positively proportional.
  std::optional<Rat> c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) {
      if (b[i] != 0) return {};
      continue;
    }
    Rat r = b[i] / a[i];
    if (c && *c != r) return {};
    c = r;
  }
  if (!c || *c <= 0) return {};
  return {*c};
}

QuadExt qpow(const QuadExt& x, int d) {
  QuadExt out(1);
  for (int i = 0; i < d; ++i) out = out * x;
  return out;
}

void finish_margin(PropertyReport& r, double margin, bool first) {
  if (first || margin < r.worst_margin) r.worst_margin = margin;
}

}  // namespace

long long uniform_int(Rng& rng, long long lo, long long hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidOperands, "empty sampling range");
  const unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1ULL;
  return lo + static_cast<long long>(rng() % span);
}

ClassSampler big_class_sampler(const Model& model, long radius, long denominator) {
  if (radius < 1 || denominator < 1) throw Error(ErrorKind::Config, "sampler radius and denominator must be positive");
  const std::size_t rho = static_cast<std::size_t>(picard_number(model));
  return [model, rho, radius, denominator](Rng& rng) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      NSClass c;
      for (std::size_t i = 0; i < rho; ++i) {
        c.coords.push_back(make_rat(Int(static_cast<long>(uniform_int(rng, -radius * denominator, radius * denominator))), Int(denominator)));
      }
      if (!big_test(model, c)) continue;
      try {
        vol(model, c);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::UnsupportedClass) continue;
        throw;
      }
      return c;
    }
    throw Error(ErrorKind::InvalidModel, "sampler found no big classes in the sampling box of " + model_name(model));
  };
}

// ---------------------------------------------------------------------------
// Report rendering

std::string PropertyReport::to_text() const {
  std::string out;
  out += "property: " + property + "\n";
  out += "model: " + model + "\n";
  out += "samples: " + std::to_string(samples) + "\n";
  out += "violations: " + std::to_string(violations.size()) + "\n";
  out += "worst_margin: " + fmt_double(worst_margin) + "\n";
  out += std::string("status: ") + (passed() ? "pass" : "fail") + "\n";
  for (const auto& n : notes) out += "note: " + n + "\n";
  for (const auto& v : violations) {
    out += "violation: inputs=" + v.inputs + " values=" + v.values + " margin=" + fmt_double(v.margin) + "\n";
  }
  for (const auto& r : records) out += "record: " + r + "\n";
  return out;
}

std::string PropertyReport::to_json() const {
  nlohmann::ordered_json j;
  j["property"] = property;
  j["model"] = model;
  j["samples"] = samples;
  j["passed"] = passed();
  j["worst_margin"] = worst_margin;
  j["notes"] = notes;
  auto& v = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& x : violations) {
    v.push_back({{"inputs", x.inputs}, {"values", x.values}, {"margin", x.margin}});
  }
  if (!records.empty()) j["records"] = records;
  return j.dump(2);
}

// ---------------------------------------------------------------------------

PropertyReport check_log_concavity(const Model& model, const ClassSampler& sampler, const CheckOptions& options) {
  PropertyReport r;
  r.property = "log_concavity";
  r.model = model_name(model);
  const int d = model_dimension(model);
  Rng rng(options.seed);
  Enclosure sum, left, right;
  mpfr_t margin, rhs;
  mpfr_inits2(256, margin, rhs, static_cast<mpfr_ptr>(nullptr));
  for (std::size_t i = 0; i < options.samples; ++i) {
    NSClass a = sampler(rng);
    NSClass b = (i % 10 == 0) ? to_rat(uniform_int(rng, 1, 3)) * a : sampler(rng);
    QuadExt va = vol(model, a).value, vb = vol(model, b).value, vs = vol(model, a + b).value;
    std::string inputs = "(" + format_class(a) + ")+(" + format_class(b) + ")";
    std::string values = va.to_string() + "," + vb.to_string() + "," + vs.to_string();
    double m = 0;
    auto c = proportional_factor(a, b);
    if (!c.empty()) {
      // Equality case: check the exact homogeneity identities instead.
      Rat k = c[0];
      bool ok = vb == qpow(QuadExt(k), d) * va && vs == qpow(QuadExt(1 + k), d) * va;
      if (!ok) r.violations.push_back({inputs, values, -1});
      m = ok ? 0.0 : -1.0;
    } else {
      sum.set(vs);
      left.set(va);
      right.set(vb);
      sum.root(d);
      left.root(d);
      right.root(d);
      mpfr_add(rhs, left.hi, right.hi, MPFR_RNDU);
      mpfr_sub(margin, sum.lo, rhs, MPFR_RNDD);
      double mg = mpfr_get_d(margin, MPFR_RNDD);
      double scale = mpfr_get_d(rhs, MPFR_RNDU);
      m = scale > 0 ? mg / scale : mg;
      if (mg < -1e-9 * scale) r.violations.push_back({inputs, values, m});
    }
    finish_margin(r, m, i == 0);
    if (options.keep_records) r.records.push_back(inputs + " margin=" + fmt_double(m));
    ++r.samples;
  }
  mpfr_clears(margin, rhs, static_cast<mpfr_ptr>(nullptr));
  r.notes.push_back("tolerance 1e-9 relative; roots enclosed at 256 bits with directed rounding");
  return r;
}

PropertyReport check_homogeneity(const Model& model, const ClassSampler& sampler, const std::vector<Rat>& scalars,
                                 const CheckOptions& options) {
  PropertyReport r;
  r.property = "homogeneity";
  r.model = model_name(model);
  for (const auto& a : scalars) {
    if (a <= 0) throw Error(ErrorKind::Config, "homogeneity scalars must be positive");
  }
  const int d = model_dimension(model);
  Rng rng(options.seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    NSClass x = sampler(rng);
    QuadExt v = vol(model, x).value;
    for (const auto& a : scalars) {
      QuadExt lhs = vol(model, a * x).value;
      QuadExt rhs = qpow(QuadExt(a), d) * v;
      if (lhs != rhs) {
        r.violations.push_back({format_rat(a) + "*(" + format_class(x) + ")", lhs.to_string() + " vs " + rhs.to_string(),
                                (lhs - rhs).to_double()});
      }
      if (options.keep_records) r.records.push_back(format_rat(a) + "*(" + format_class(x) + ") vol=" + lhs.to_string());
      ++r.samples;
    }
  }
  r.worst_margin = 0;
  r.notes.push_back("exact comparison");
  return r;
}

PropertyReport check_numerical_invariance(const ToricModel& model, const ClassSampler& sampler,
                                          const CheckOptions& options) {
  PropertyReport r;
  r.property = "numerical_invariance";
  r.model = model.name;
  Rng rng(options.seed);
  for (std::size_t i = 0; i < options.samples; ++i) {
    NSClass x = sampler(rng);
    RatVec a = divisor_of_class(model, x);
    RatVec u(model.dim);
    for (auto& c : u) c = to_rat(uniform_int(rng, -3, 3));
    RatVec b = add(a, principal_divisor(model, u));
    std::string inputs = "class (" + format_class(x) + ") shift (" + format_class(NSClass(u)) + ")";
    auto mismatch = [&](const std::string& what, const std::string& l, const std::string& rr) {
      r.violations.push_back({inputs, what + ": " + l + " vs " + rr, -1});
    };
    if (class_of_divisor(model, b) != x) mismatch("class", format_class(class_of_divisor(model, b)), format_class(x));
    Rat va = toric_volume_divisor(model, a), vb = toric_volume_divisor(model, b);
    if (va != vb) mismatch("vol", format_rat(va), format_rat(vb));
    if (va > 0) {
      for (std::size_t k = 0; k < model.rays.size(); ++k) {
        Rat oa = toric_ord_divisor(model, k, a), ob = toric_ord_divisor(model, k, b);
        if (oa != ob) mismatch("ord ray " + std::to_string(k), format_rat(oa), format_rat(ob));
        Rat ra = toric_restricted_vol_divisor(model, k, a), rb = toric_restricted_vol_divisor(model, k, b);
        if (ra != rb) mismatch("rvol ray " + std::to_string(k), format_rat(ra), format_rat(rb));
      }
    }
    for (long long m : {1LL, 2LL, 5LL}) {
      Int ca = lattice_point_count(toric_polytope(model, a), m), cb = lattice_point_count(toric_polytope(model, b), m);
      if (ca != cb) mismatch("count m=" + std::to_string(m), ca.get_str(), cb.get_str());
    }
    if (options.keep_records) r.records.push_back(inputs + " vol=" + format_rat(va));
    ++r.samples;
  }
  r.notes.push_back("vol, ord and restricted volume on every ray, lattice counts at m in {1,2,5}");
  return r;
}

PropertyReport check_lipschitz(const Model& model, const Slice2D& slice) {
  PropertyReport r;
  r.property = "lipschitz";
  r.model = model_name(model);
  if (static_cast<int>(slice.origin.size()) != picard_number(model)) {
    throw Error(ErrorKind::Config, "slice dimension does not match the Picard number");
  }
  const int d = model_dimension(model);
  std::size_t skipped = 0;
  auto estimate = [&](const Slice2D& s) {
    const int n1 = s.steps_u, n2 = s.steps_v;
    std::vector<std::vector<std::optional<double>>> v(n1 + 1, std::vector<std::optional<double>>(n2 + 1));
    std::vector<std::vector<std::vector<double>>> pts(n1 + 1, std::vector<std::vector<double>>(n2 + 1));
    for (int i = 0; i <= n1; ++i) {
      for (int j = 0; j <= n2; ++j) {
        RatVec p = s.point(i, j);
        for (const auto& c : p) pts[i][j].push_back(c.get_d());
        try {
          v[i][j] = vol(model, NSClass(p)).to_double();
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::UnsupportedClass) throw;
          ++skipped;
        }
        ++r.samples;
      }
    }
    auto norm = [](const std::vector<double>& x) {
      double s2 = 0;
      for (double c : x) s2 += c * c;
      return std::sqrt(s2);
    };
    double best = 0;
    auto edge = [&](int i, int j, int k, int l) {
      if (!v[i][j] || !v[k][l]) return;
      std::vector<double> diff(pts[i][j].size());
      for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = pts[i][j][c] - pts[k][l][c];
      double big = std::max(norm(pts[i][j]), norm(pts[k][l]));
      if (big == 0) return;
      double den = std::pow(big, d - 1) * norm(diff);
      best = std::max(best, std::fabs(*v[i][j] - *v[k][l]) / den);
    };
    for (int i = 0; i <= n1; ++i) {
      for (int j = 0; j <= n2; ++j) {
        if (i < n1) edge(i, j, i + 1, j);
        if (j < n2) edge(i, j, i, j + 1);
      }
    }
    return best;
  };
  Slice2D fine = slice;
  fine.steps_u *= 2;
  fine.steps_v *= 2;
  double c1 = estimate(slice), c2 = estimate(fine);
  double scale = std::max(c1, c2);
  double rel = scale > 0 ? std::fabs(c1 - c2) / scale : 0.0;
  r.worst_margin = 0.2 - rel;
  if (!std::isfinite(c1) || !std::isfinite(c2) || rel > 0.2) {
    r.violations.push_back({"slice refinements", fmt_double(c1) + " vs " + fmt_double(c2), r.worst_margin});
  }
  r.notes.push_back("estimate " + fmt_double(c1) + " at base grid, " + fmt_double(c2) + " at 2x refinement");
  if (skipped) r.notes.push_back(std::to_string(skipped) + " points outside the closed-form domain skipped");
  return r;
}

// ---------------------------------------------------------------------------
// Chamber fitting

namespace {

std::string chamber_key(const Model& model, const NSClass& cls) {
  if (const auto* t = as_toric(model)) {
    auto p = toric_polytope(*t, divisor_of_class(*t, cls));
    if (!p.is_full_dimensional()) return "zero";
    std::vector<std::vector<std::size_t>> fan;
    for (const auto& v : p.vertices()) {
      std::vector<std::size_t> tight;
      for (std::size_t k = 0; k < p.inequalities().size(); ++k) {
        if (p.inequalities()[k].slack(v) == 0) tight.push_back(k);
      }
      fan.push_back(tight);
    }
    std::sort(fan.begin(), fan.end());
    std::string key = "fan";
    for (const auto& f : fan) {
      key += " {";
      for (std::size_t k = 0; k < f.size(); ++k) key += (k ? "," : "") + std::to_string(f[k]);
      key += "}";
    }
    return key;
  }
  if (const auto* s = std::get_if<SurfaceModel>(&model)) {
    if (!big_test(model, cls)) return "zero";
    auto z = zariski(*s, cls);
    std::string key = "support {";
    for (std::size_t k = 0; k < z.support.size(); ++k) key += (k ? "," : "") + std::to_string(z.support[k]);
    return key + "}";
  }
  if (const auto* c = std::get_if<CutkoskyModel>(&model)) {
    if (cls[0] <= 0) return "zero";
    QuadExt sg = sigma(*c, {cls[1] / cls[0], cls[2] / cls[0], cls[3] / cls[0]});
    return sg == QuadExt(1) ? "sigma = 1" : "sigma < 1";
  }
  throw Error(ErrorKind::UnsupportedModel, "chamber_fit needs a toric, surface or Cutkosky model");
}

struct Sample {
  Rat s, t;
  QuadExt value;
};

std::vector<std::pair<unsigned, unsigned>> monomials(int degree) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (int total = 0; total <= degree; ++total) {
    for (int a = total; a >= 0; --a) out.emplace_back(a, total - a);
  }
  return out;
}

RatVec monomial_row(const std::vector<std::pair<unsigned, unsigned>>& mons, const Rat& s, const Rat& t) {
  RatVec row;
  for (auto [a, b] : mons) row.push_back(pow_rat(s, a) * pow_rat(t, b));
  return row;
}

// Component of a value along the Q-basis element sqrt(disc) (disc 1 = rationals).
Rat component(const QuadExt& v, const Int& disc) {
  if (disc == 1) return v.rational_part();
  return v.discriminant() == disc ? v.radical_coefficient() : Rat(0);
}

std::string poly_string(const std::vector<std::pair<unsigned, unsigned>>& mons, const RatVec& coeff,
                        const std::string& x, const std::string& y) {
  std::string out;
  for (std::size_t k = 0; k < mons.size(); ++k) {
    if (coeff[k] == 0) continue;
    Rat c = coeff[k];
    bool neg = c < 0;
    if (neg) c = -c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mon;
    auto [a, b] = mons[k];
    if (a) mon += a == 1 ? x : x + "^" + std::to_string(a);
    if (b) mon += std::string(mon.empty() ? "" : "*") + (b == 1 ? y : y + "^" + std::to_string(b));
    if (mon.empty()) out += format_rat(c);
    else if (c == 1) out += mon;
    else out += format_rat(c) + "*" + mon;
  }
  return out.empty() ? "0" : out;
}

void fit_group(ChamberFit& g, const std::vector<Sample>& pts, int degree, const std::string& x, const std::string& y) {
  g.points = pts.size();
  // Affine rank of the sample positions.
  RatMatrix diffs;
  for (const auto& p : pts) diffs.push_back({p.s - pts[0].s, p.t - pts[0].t});
  g.wall = rank(diffs) < 2;
  const auto mons = monomials(degree);
  RatMatrix rows;
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < pts.size() && rows.size() < mons.size(); ++k) {
    RatMatrix trial = rows;
    trial.push_back(monomial_row(mons, pts[k].s, pts[k].t));
    if (rank(trial) > rows.size()) {
      rows = std::move(trial);
      chosen.push_back(k);
    }
  }
  g.determined = rows.size() == mons.size();
  std::set<Int> discs = {Int(1)};
  for (const auto& p : pts) {
    if (!p.value.is_rational()) discs.insert(p.value.discriminant());
  }
  std::string poly;
  bool ok = true;
  for (const auto& disc : discs) {
    RatVec rhs;
    for (auto k : chosen) rhs.push_back(component(pts[k].value, disc));
    auto coeff = solve_any(rows, rhs);
    if (!coeff) {
      ok = false;
      g.failure = "interpolation system inconsistent";
      break;
    }
    for (const auto& p : pts) {
      if (dot(monomial_row(mons, p.s, p.t), *coeff) != component(p.value, disc)) {
        ok = false;
        g.failure = "fit misses point (" + x + "," + y + ") = (" + format_rat(p.s) + "," + format_rat(p.t) + ")";
        break;
      }
    }
    if (!ok) break;
    std::string part = poly_string(mons, *coeff, x, y);
    if (disc == 1) poly = part;
    else if (part != "0") poly += (poly.empty() ? "" : " + ") + std::string("sqrt(") + disc.get_str() + ")*(" + part + ")";
  }
  g.fitted = ok || g.failure != "interpolation system inconsistent";
  g.verified = ok;
  if (ok) g.polynomial = poly.empty() ? "0" : poly;
}

}  // namespace

ChamberFitResult chamber_fit(const Model& model, const Slice2D& slice, int degree) {
  if (degree < 0 || degree > 8) throw Error(ErrorKind::Config, "fit degree must be in 0..8");
  if (static_cast<int>(slice.origin.size()) != picard_number(model)) {
    throw Error(ErrorKind::Config, "slice dimension does not match the Picard number");
  }
  ChamberFitResult out;
  // Rank 2: the slice is an affine chart of the whole class plane, so fit in
  // class coordinates directly.
  const int rho = picard_number(model);
  out.variables = rho == 2 ? std::pair<std::string, std::string>{"c1", "c2"} : std::pair<std::string, std::string>{"s", "t"};
  std::map<std::string, std::vector<Sample>> groups;
  std::vector<std::string> order;
  for (int i = 0; i <= slice.steps_u; ++i) {
    for (int j = 0; j <= slice.steps_v; ++j) {
      NSClass cls(slice.point(i, j));
      std::string key;
      QuadExt v;
      try {
        key = chamber_key(model, cls);
        v = vol(model, cls).value;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UnsupportedClass) throw;
        ++out.skipped;
        continue;
      }
      if (!groups.count(key)) order.push_back(key);
      if (rho == 2) groups[key].push_back({cls[0], cls[1], v});
      else groups[key].push_back({make_rat(i, slice.steps_u), make_rat(j, slice.steps_v), v});
    }
  }
  for (const auto& key : order) {
    ChamberFit g;
    g.key = key;
    fit_group(g, groups[key], degree, out.variables.first, out.variables.second);
    if (g.wall) ++out.walls;
    else ++out.chambers;
    if (!g.wall && !g.verified) out.piecewise_polynomial = false;
    out.groups.push_back(std::move(g));
  }
  return out;
}

PropertyReport chamber_fit_report(const Model& model, const Slice2D& slice, int degree) {
  auto fit = chamber_fit(model, slice, degree);
  PropertyReport r;
  r.property = "chamber_fit";
  r.model = model_name(model);
  for (const auto& g : fit.groups) {
    r.samples += g.points;
    std::string line = std::string(g.wall ? "wall" : "chamber") + " [" + g.key + "] points=" + std::to_string(g.points);
    if (g.verified) line += " polynomial=" + g.polynomial + (g.determined ? "" : " (underdetermined)");
    else line += " fit failed: " + g.failure;
    r.notes.push_back(line);
    if (!g.wall && !g.verified) r.violations.push_back({g.key, g.failure, -1});
  }
  r.notes.push_back("chambers=" + std::to_string(fit.chambers) + " walls=" + std::to_string(fit.walls) +
                    " skipped=" + std::to_string(fit.skipped));
  r.worst_margin = fit.piecewise_polynomial ? 0 : -1;
  return r;
}

}  // namespace asymvol
