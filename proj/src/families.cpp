#include "asymvol/families.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "asymvol/error.hpp"
#include "asymvol/linalg.hpp"
#include "asymvol/polytope.hpp"

namespace asymvol {

namespace {

bool dominates(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

IntVec scaled_index(const IntVec& m, long long k) {
  IntVec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i] * k;
  return out;
}

IntVec add_index(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::string index_string(const IntVec& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// MonomialIdeal

MonomialIdeal::MonomialIdeal(int vars, std::vector<IntVec> generators) : vars_(vars) {
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != vars) {
      throw Error(ErrorKind::InvalidOperands, "monomial exponent has wrong length");
    }
    if (std::any_of(g.begin(), g.end(), [](long long x) { return x < 0; })) {
      throw Error(ErrorKind::InvalidOperands, "monomial exponents must be nonnegative");
    }
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < generators.size() && minimal; ++j) {
      if (i != j && dominates(generators[i], generators[j])) minimal = false;
    }
    if (minimal) generators_.push_back(generators[i]);
  }
}

MonomialIdeal MonomialIdeal::zero(int vars) { return MonomialIdeal(vars, {}); }

MonomialIdeal MonomialIdeal::unit(int vars) { return MonomialIdeal(vars, {IntVec(vars, 0)}); }

bool MonomialIdeal::is_unit() const {
  return generators_.size() == 1 &&
         std::all_of(generators_[0].begin(), generators_[0].end(), [](long long x) { return x == 0; });
}

bool MonomialIdeal::contains(const IntVec& alpha) const {
  return std::any_of(generators_.begin(), generators_.end(), [&](const IntVec& g) { return dominates(alpha, g); });
}

Rat MonomialIdeal::order(const RatVec& weight) const {
  if (is_zero()) throw Error(ErrorKind::NotEffective, "order of the zero ideal is undefined");
  Rat best;
  bool first = true;
  for (const auto& g : generators_) {
    Rat v = dot(g, weight);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

// ---------------------------------------------------------------------------
// IndexBox / IndexPolynomial

IndexBox IndexBox::cube(int rank, long long lo, long long hi) { return {IntVec(rank, lo), IntVec(rank, hi)}; }

std::vector<IntVec> IndexBox::points() const {
  std::vector<IntVec> out;
  if (lo.empty()) return out;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) return out;
  }
  IntVec m = lo;
  while (true) {
    out.push_back(m);
    std::size_t i = 0;
    while (i < m.size() && m[i] == hi[i]) {
      m[i] = lo[i];
      ++i;
    }
    if (i == m.size()) break;
    ++m[i];
  }
  return out;
}

bool IndexBox::contains(const IntVec& m) const {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < lo[i] || m[i] > hi[i]) return false;
  }
  return true;
}

Rat IndexPolynomial::operator()(const IntVec& m) const {
  if (static_cast<int>(m.size()) != rank) throw Error(ErrorKind::InvalidOperands, "index has wrong rank");
  Rat s = 0;
  for (const auto& t : terms) {
    Rat v = t.coefficient;
    for (int i = 0; i < rank; ++i) v *= pow_rat(to_rat(m[i]), t.powers[i]);
    s += v;
  }
  return s;
}

bool IndexPolynomial::is_linear() const {
  return std::all_of(terms.begin(), terms.end(), [](const Term& t) {
    return std::accumulate(t.powers.begin(), t.powers.end(), 0u) <= 1;
  });
}

std::string IndexPolynomial::to_string() const {
  std::string out;
  for (const auto& t : terms) {
    Rat c = t.coefficient;
    bool neg = c < 0;
    if (neg) c = -c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mon;
    for (int i = 0; i < rank; ++i) {
      if (t.powers[i] == 0) continue;
      if (!mon.empty()) mon += "*";
      mon += "m" + std::to_string(i + 1);
      if (t.powers[i] > 1) mon += "^" + std::to_string(t.powers[i]);
    }
    if (mon.empty()) out += format_rat(c);
    else if (c == 1) out += mon;
    else out += format_rat(c) + "*" + mon;
  }
  return out.empty() ? "0" : out;
}

IndexPolynomial IndexPolynomial::parse(std::string_view text, int rank) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  }
  if (s.empty()) throw Error(ErrorKind::Parse, "empty index polynomial");
  IndexPolynomial p;
  p.rank = rank;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::Parse, "cannot parse '" + std::string(text) + "' at offset " + std::to_string(pos) + ": " +
                                      why);
  };
  auto read_uint = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  };
  while (pos < s.size()) {
    Term t;
    t.powers.assign(rank, 0);
    t.coefficient = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') t.coefficient = -1;
      ++pos;
    } else if (!p.terms.empty()) {
      fail("expected '+' or '-'");
    }
    bool any = false;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      if (any) {
        if (s[pos] == '*') ++pos;
      }
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::string num = read_uint();
        if (pos < s.size() && s[pos] == '/') {
          ++pos;
          std::string den = read_uint();
          if (den.empty()) fail("missing denominator");
          num += "/" + den;
        }
        t.coefficient *= parse_rat(num);
      } else if (pos < s.size() && s[pos] == 'm') {
        ++pos;
        std::string idx = read_uint();
        int i = idx.empty() ? 1 : std::stoi(idx);
        if (i < 1 || i > rank) fail("index variable m" + idx + " out of range for rank " + std::to_string(rank));
        unsigned power = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          std::string e = read_uint();
          if (e.empty()) fail("missing exponent");
          power = static_cast<unsigned>(std::stoul(e));
        }
        t.powers[i - 1] += power;
      } else {
        fail("unexpected character");
      }
      any = true;
    }
    if (!any) fail("empty term");
    p.terms.push_back(std::move(t));
  }
  return p;
}

// ---------------------------------------------------------------------------
// MonomialIdealFamily

MonomialIdealFamily::MonomialIdealFamily(int rank, int vars, Rule rule, std::string description)
    : rank_(rank),
      vars_(vars),
      rule_(std::move(rule)),
      description_(std::move(description)),
      weight_(vars, Rat(1)),
      box_(IndexBox::cube(rank, -3, 3)) {
  if (rank < 1 || vars < 1) throw Error(ErrorKind::InvalidModel, "family needs rank >= 1 and at least one variable");
}

MonomialIdealFamily& MonomialIdealFamily::set_weight(RatVec weight) {
  if (static_cast<int>(weight.size()) != vars_) throw Error(ErrorKind::InvalidModel, "weight has wrong length");
  if (std::any_of(weight.begin(), weight.end(), [](const Rat& x) { return x < 0; })) {
    throw Error(ErrorKind::InvalidModel, "valuation weights must be nonnegative");
  }
  weight_ = std::move(weight);
  return *this;
}

MonomialIdealFamily& MonomialIdealFamily::set_box(IndexBox box) {
  box_ = std::move(box);
  return *this;
}

MonomialIdealFamily& MonomialIdealFamily::set_domain(IndexBox box) {
  domain_ = std::move(box);
  return *this;
}

MonomialIdeal MonomialIdealFamily::operator()(const IntVec& m) const {
  if (static_cast<int>(m.size()) != rank_) {
    throw Error(ErrorKind::InvalidOperands, "index " + index_string(m) + " has wrong rank");
  }
  MonomialIdeal out = rule_(m);
  if (out.variable_count() != vars_) throw Error(ErrorKind::InvalidModel, "rule produced an ideal in the wrong ring");
  return out;
}

namespace {

// Minimal alpha >= 0 with <lambda, alpha> >= level.
std::vector<IntVec> weighted_generators(const RatVec& lambda, const Rat& level) {
  const std::size_t d = lambda.size();
  if (level <= 0) return {IntVec(d, 0)};
  std::vector<IntVec> out;
  IntVec alpha(d, 0);
  std::function<void(std::size_t, Rat)> rec = [&](std::size_t i, Rat partial) {
    if (i + 1 == d) {
      Rat need = level - partial;
      Int last = need <= 0 ? Int(0) : ceil_rat(need / lambda[i]);
      alpha[i] = last.get_si();
      out.push_back(alpha);
      return;
    }
    long long cap = ceil_rat(level / lambda[i]).get_si();
    for (long long a = 0; a <= cap; ++a) {
      alpha[i] = a;
      rec(i + 1, partial + lambda[i] * to_rat(a));
      if (partial + lambda[i] * to_rat(a) >= level) break;
    }
    alpha[i] = 0;
  };
  rec(0, 0);
  return out;
}

}  // namespace

MonomialIdealFamily weighted_family(int rank, RatVec lambda, IndexPolynomial threshold) {
  if (lambda.empty() || std::any_of(lambda.begin(), lambda.end(), [](const Rat& x) { return x <= 0; })) {
    throw Error(ErrorKind::InvalidModel, "weighted family needs positive weights");
  }
  if (threshold.rank != rank) throw Error(ErrorKind::InvalidModel, "threshold rank does not match family rank");
  const int vars = static_cast<int>(lambda.size());
  std::string desc = "weighted <(";
  for (std::size_t i = 0; i < lambda.size(); ++i) desc += (i ? "," : "") + format_rat(lambda[i]);
  desc += "), alpha> >= " + threshold.to_string();
  auto rule = [vars, lambda, threshold](const IntVec& m) {
    return MonomialIdeal(vars, weighted_generators(lambda, threshold(m)));
  };
  return MonomialIdealFamily(rank, vars, rule, desc);
}

MonomialIdealFamily threshold_family(int rank, int vars, IndexPolynomial threshold) {
  if (threshold.rank != rank) throw Error(ErrorKind::InvalidModel, "threshold rank does not match family rank");
  std::string desc = "threshold |alpha| >= " + threshold.to_string();
  RatVec ones(vars, Rat(1));
  auto rule = [vars, ones, threshold](const IntVec& m) {
    return MonomialIdeal(vars, weighted_generators(ones, Rat(ceil_rat(threshold(m)))));
  };
  return MonomialIdealFamily(rank, vars, rule, desc);
}

MonomialIdealFamily principal_family(std::vector<IntVec> exponents) {
  if (exponents.empty()) throw Error(ErrorKind::InvalidModel, "principal family needs one exponent per index");
  const int vars = static_cast<int>(exponents[0].size());
  for (const auto& e : exponents) {
    if (static_cast<int>(e.size()) != vars) throw Error(ErrorKind::InvalidModel, "exponent vectors differ in length");
  }
  std::string desc = "principal";
  for (const auto& e : exponents) desc += " " + index_string(e);
  const int rank = static_cast<int>(exponents.size());
  auto rule = [vars, exponents](const IntVec& m) {
    IntVec alpha(vars, 0);
    for (std::size_t j = 0; j < exponents.size(); ++j) {
      for (int i = 0; i < vars; ++i) alpha[i] += m[j] * exponents[j][i];
    }
    if (std::any_of(alpha.begin(), alpha.end(), [](long long x) { return x < 0; })) return MonomialIdeal::zero(vars);
    return MonomialIdeal(vars, {alpha});
  };
  return MonomialIdealFamily(rank, vars, rule, desc);
}

MonomialIdealFamily table_family(int rank, int vars, std::map<IntVec, std::vector<IntVec>> table) {
  IndexBox domain = IndexBox::cube(rank, 0, 0);
  for (const auto& [m, gens] : table) {
    if (static_cast<int>(m.size()) != rank) throw Error(ErrorKind::InvalidModel, "table index has wrong rank");
    for (int i = 0; i < rank; ++i) {
      domain.lo[i] = std::min(domain.lo[i], m[i]);
      domain.hi[i] = std::max(domain.hi[i], m[i]);
    }
    MonomialIdeal check(vars, gens);  // validates lengths and signs
  }
  auto rule = [vars, table](const IntVec& m) {
    if (std::all_of(m.begin(), m.end(), [](long long x) { return x == 0; })) return MonomialIdeal::unit(vars);
    auto it = table.find(m);
    if (it == table.end()) return MonomialIdeal::zero(vars);
    return MonomialIdeal(vars, it->second);
  };
  MonomialIdealFamily f(rank, vars, rule, "table with " + std::to_string(table.size()) + " entries");
  f.set_domain(domain);
  return f;
}

MonomialIdealFamily family_from_toric(const ToricModel& model, const std::vector<std::size_t>& chart,
                                      std::optional<std::vector<RatVec>> basis, std::uint64_t budget) {
  const int d = model.dim;
  if (static_cast<int>(chart.size()) != d) {
    throw Error(ErrorKind::UnsupportedChart, "chart needs exactly " + std::to_string(d) + " rays");
  }
  RatMatrix cols(d, RatVec(d));
  for (int j = 0; j < d; ++j) {
    if (chart[j] >= model.rays.size()) throw Error(ErrorKind::UnsupportedChart, "chart ray index out of range");
    for (int i = 0; i < d; ++i) cols[i][j] = to_rat(model.rays[chart[j]][i]);
  }
  Rat det = determinant(cols);
  if (det != 1 && det != -1) {
    throw Error(ErrorKind::UnsupportedChart, "chart cone is not smooth (determinant " + format_rat(det) + ")");
  }
  // A cone of the fan contains no further rays.
  for (std::size_t r = 0; r < model.rays.size(); ++r) {
    if (std::find(chart.begin(), chart.end(), r) != chart.end()) continue;
    auto coeff = solve(cols, to_rat(model.rays[r]));
    if (coeff && std::all_of(coeff->begin(), coeff->end(), [](const Rat& x) { return x >= 0; })) {
      throw Error(ErrorKind::UnsupportedChart, "ray " + std::to_string(r) + " lies in the chart cone");
    }
  }
  std::vector<RatVec> divisors = basis ? *basis : model.basis_divisors;
  for (const auto& b : divisors) {
    if (b.size() != model.rays.size()) throw Error(ErrorKind::InvalidModel, "basis divisor has wrong length");
  }
  const int rank = static_cast<int>(divisors.size());
  std::string desc = "toric " + model.name + " chart (";
  for (std::size_t j = 0; j < chart.size(); ++j) desc += (j ? "," : "") + std::to_string(chart[j]);
  desc += ")";
  auto rule = [model, chart, divisors, budget, d](const IntVec& m) {
    RatVec a(model.rays.size(), Rat(0));
    for (std::size_t j = 0; j < divisors.size(); ++j) a = add(a, scale(to_rat(m[j]), divisors[j]));
    auto p = toric_polytope(model, a);
    if (p.is_empty()) return MonomialIdeal::zero(d);
    std::vector<IntVec> gens;
    for (const auto& u : lattice_points(p, 1, budget)) {
      IntVec alpha(d);
      RatVec ur = to_rat(u);
      for (int j = 0; j < d; ++j) {
        Rat e = dot(model.rays[chart[j]], ur) + a[chart[j]];
        alpha[j] = e.get_num().get_si();
      }
      gens.push_back(alpha);
    }
    return MonomialIdeal(d, gens);
  };
  return MonomialIdealFamily(rank, d, rule, desc);
}

// ---------------------------------------------------------------------------

MultiplicativityReport verify_multiplicativity(const MonomialIdealFamily& family, const IndexBox& box) {
  MultiplicativityReport report;
  const IntVec zero(family.rank(), 0);
  if (!family(zero).is_unit()) {
    report.violations.push_back({zero, zero, {}, "a_0 is not the unit ideal"});
  }
  auto pts = box.points();
  std::map<IntVec, MonomialIdeal> cache;
  auto ideal = [&](const IntVec& m) -> const MonomialIdeal& {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, family(m)).first;
    return it->second;
  };
  for (const auto& m : pts) {
    for (const auto& l : pts) {
      if (l < m) continue;  // symmetric
      IntVec s = add_index(m, l);
      if (family.domain() && !family.domain()->contains(s)) continue;
      ++report.pairs_checked;
      const auto& a = ideal(m);
      const auto& b = ideal(l);
      if (a.is_zero() || b.is_zero()) continue;
      const auto& c = ideal(s);
      bool ok = true;
      for (const auto& g : a.generators()) {
        for (const auto& h : b.generators()) {
          IntVec w = add_index(g, h);
          if (!c.contains(w)) {
            report.violations.push_back({m, l, w, c.is_zero() ? "a_{m+l} is zero" : "product not contained"});
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    }
  }
  return report;
}

OrdEstimate asymptotic_ord0(const MonomialIdealFamily& family, const IntVec& direction, int depth) {
  if (depth < 1) throw Error(ErrorKind::InvalidOperands, "depth must be positive");
  OrdEstimate out;
  out.depth = depth;
  bool found = false;
  for (int k = 1; k <= depth; ++k) {
    auto ideal = family(scaled_index(direction, k));
    if (ideal.is_zero()) {
      if (found) out.sequence.push_back(out.value);
      continue;
    }
    Rat v = ideal.order(family.weight()) / k;
    if (!found || v < out.value) out.value = v;
    found = true;
    out.sequence.push_back(out.value);
  }
  if (!found) {
    throw Error(ErrorKind::NotEffective, "a_{k m} is zero for all k <= " + std::to_string(depth) + " at m = " +
                                             index_string(direction));
  }
  return out;
}

OrdEstimate asymptotic_ord0(const MonomialIdealFamily& family, const RatVec& direction, int depth) {
  Int den = 1;
  for (const auto& x : direction) den = lcm(den, Int(x.get_den()));
  IntVec m;
  for (const auto& x : direction) m.push_back(Rat(x * den).get_num().get_si());
  auto est = asymptotic_ord0(family, m, depth);
  Rat scale_back = Rat(1) / Rat(den);
  est.value *= scale_back;
  for (auto& v : est.sequence) v *= scale_back;
  return est;
}

ConeEstimate cones_estimate(const MonomialIdealFamily& family, const IndexBox& box) {
  std::vector<RatVec> nef, psef;
  for (const auto& m : box.points()) {
    if (std::all_of(m.begin(), m.end(), [](long long x) { return x == 0; })) continue;
    auto ideal = family(m);
    if (ideal.is_zero()) continue;
    psef.push_back(to_rat(m));
    if (ideal.is_unit()) nef.push_back(to_rat(m));
  }
  return ConeEstimate{PolyCone(family.rank(), nef), PolyCone(family.rank(), psef), nef.size(), psef.size(), box};
}

bool has_ample_indices(const MonomialIdealFamily& family, const IndexBox& box) {
  RatMatrix units;
  for (const auto& m : box.points()) {
    if (family(m).is_unit()) units.push_back(to_rat(m));
  }
  return !units.empty() && static_cast<int>(rank(units)) == family.rank();
}

RatVec Slice2D::point(int i, int j) const {
  RatVec p = origin;
  p = add(p, scale(make_rat(i, steps_u), u));
  p = add(p, scale(make_rat(j, steps_v), v));
  return p;
}

Slice2D Slice2D::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ';')) parts.push_back(item);
  if (parts.size() != 4) {
    throw Error(ErrorKind::Config, "slice must be 'origin;direction1;direction2;n1,n2', got '" + std::string(text) + "'");
  }
  Slice2D s;
  s.origin = parse_class(parts[0]).coords;
  s.u = parse_class(parts[1]).coords;
  s.v = parse_class(parts[2]).coords;
  auto steps = parse_class(parts[3]).coords;
  if (s.u.size() != s.origin.size() || s.v.size() != s.origin.size()) {
    throw Error(ErrorKind::Config, "slice origin and directions differ in length");
  }
  auto is_zero = [](const RatVec& v) { return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; }); };
  if (is_zero(s.u) || is_zero(s.v)) throw Error(ErrorKind::Config, "slice directions must be nonzero");
  if (rank({s.u, s.v}) < 2) throw Error(ErrorKind::Config, "slice directions must be linearly independent");
  if (steps.size() != 2 || !is_integer(steps[0]) || !is_integer(steps[1]) || steps[0] < 1 || steps[1] < 1 ||
      steps[0] > 4096 || steps[1] > 4096) {
    throw Error(ErrorKind::Config, "slice step counts must be two integers in 1..4096");
  }
  s.steps_u = static_cast<int>(steps[0].get_num().get_si());
  s.steps_v = static_cast<int>(steps[1].get_num().get_si());
  return s;
}

RegularityReport regularity_scan(const MonomialIdealFamily& family, const Slice2D& slice, int depth,
                                 bool require_ample_indices) {
  if (static_cast<int>(slice.origin.size()) != family.rank()) {
    throw Error(ErrorKind::InvalidOperands, "slice dimension does not match family rank");
  }
  const bool ample = has_ample_indices(family, family.box());
  if (require_ample_indices && !ample) {
    throw Error(ErrorKind::InvalidOperands, "family has no r independent ample indices in its box; Big is unavailable");
  }
  RegularityReport r;
  r.ample_indices = ample;
  r.slice = slice;
  r.depth = depth;
  const int n1 = slice.steps_u, n2 = slice.steps_v;
  r.values.assign(n1 + 1, std::vector<Rat>(n2 + 1));
  for (int i = 0; i <= n1; ++i) {
    for (int j = 0; j <= n2; ++j) r.values[i][j] = asymptotic_ord0(family, slice.point(i, j), depth).value;
  }
  const auto& f = r.values;
  r.first_u.assign(n1 + 1, std::vector<Rat>(n2 + 1, Rat(0)));
  r.first_v = r.first_u;
  r.second_u = r.first_u;
  r.second_v = r.first_u;
  for (int i = 0; i <= n1; ++i) {
    for (int j = 0; j <= n2; ++j) {
      if (i < n1) r.first_u[i][j] = f[i + 1][j] - f[i][j];
      if (j < n2) r.first_v[i][j] = f[i][j + 1] - f[i][j];
      bool crease = false;
      if (i > 0 && i < n1) {
        r.second_u[i][j] = f[i + 1][j] - 2 * f[i][j] + f[i - 1][j];
        crease |= r.second_u[i][j] != 0;
        r.max_second = std::max(r.max_second, Rat(abs(r.second_u[i][j])));
      }
      if (j > 0 && j < n2) {
        r.second_v[i][j] = f[i][j + 1] - 2 * f[i][j] + f[i][j - 1];
        crease |= r.second_v[i][j] != 0;
        r.max_second = std::max(r.max_second, Rat(abs(r.second_v[i][j])));
      }
      if (crease) r.creases.emplace_back(i, j);
    }
  }
  return r;
}

}  // namespace asymvol
