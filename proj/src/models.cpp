#include "asymvol/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "asymvol/error.hpp"

namespace asymvol {

bool NSClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rat& x) { return x == 0; });
}

bool NSClass::is_integral() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rat& x) { return is_integer(x); });
}

std::string format_class(const NSClass& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += format_rat(c[i]);
  }
  return out;
}

NSClass parse_class(std::string_view text) {
  NSClass out;
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty class specification");
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.coords.push_back(parse_rat(item));
  return out;
}

Rat bilinear(const RatMatrix& gram, const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < gram.size(); ++j) {
      if (gram[i][j] != 0) s += a[i] * gram[i][j] * b[j];
    }
  }
  return s;
}

namespace {

void check_symmetric(const RatMatrix& gram, std::size_t n, const std::string& name) {
  if (gram.size() != n) throw Error(ErrorKind::InvalidModel, name + ": gram matrix has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram[i].size() != n) throw Error(ErrorKind::InvalidModel, name + ": gram matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (gram[i][j] != gram[j][i]) throw Error(ErrorKind::InvalidModel, name + ": gram matrix is not symmetric");
    }
  }
}

void check_hodge_signature(const RatMatrix& gram, const std::string& name) {
  Inertia in = inertia(gram);
  if (in.positive != 1 || in.zero != 0) {
    throw Error(ErrorKind::InvalidModel, name + ": intersection form must have signature (1, " +
                                             std::to_string(gram.size() - 1) + "), got (" +
                                             std::to_string(in.positive) + ", " + std::to_string(in.negative) +
                                             ") with " + std::to_string(in.zero) + " null directions");
  }
}

// Integer vectors of [-r, r]^n ordered by max-norm, then lexicographically.
std::vector<RatVec> small_vectors(std::size_t n, long radius) {
  std::vector<RatVec> out;
  for (long r = 1; r <= radius; ++r) {
    std::vector<long> v(n, -r);
    while (true) {
      long mx = 0;
      for (long x : v) mx = std::max(mx, std::labs(x));
      if (mx == r) {
        RatVec rv;
        for (long x : v) rv.emplace_back(x);
        out.push_back(std::move(rv));
      }
      std::size_t i = 0;
      while (i < n && v[i] == r) v[i++] = -r;
      if (i == n) break;
      ++v[i];
    }
  }
  return out;
}

}  // namespace

ToricModel ToricModel::create(std::string name, int dim, std::vector<IntVec> rays,
                              std::vector<RatVec> basis_divisors, std::optional<NSClass> ample) {
  if (dim < 1 || dim > kMaxAmbientDimension) {
    throw Error(ErrorKind::InvalidModel, name + ": toric dimension must be in 1..4");
  }
  for (const auto& r : rays) {
    if (r.size() != static_cast<std::size_t>(dim)) throw Error(ErrorKind::InvalidModel, name + ": ray has wrong length");
    long long g = 0;
    for (auto x : r) g = gcd_ll(g, x);
    if (g != 1) throw Error(ErrorKind::InvalidModel, name + ": rays must be primitive and nonzero");
  }
  const std::size_t n = rays.size();
  if (n < static_cast<std::size_t>(dim) + 1) throw Error(ErrorKind::InvalidModel, name + ": too few rays");
  std::vector<RatVec> ray_rows;
  for (const auto& r : rays) {
    RatVec v;
    for (auto x : r) v.emplace_back(static_cast<long>(x));
    ray_rows.push_back(v);
  }
  PolyCone support(dim, ray_rows);
  if (support.dimension() != dim || !support.facet_normals().empty()) {
    throw Error(ErrorKind::InvalidModel, name + ": rays must positively span R^" + std::to_string(dim) +
                                             " (complete fan)");
  }
  const std::size_t rho = n - static_cast<std::size_t>(dim);
  if (basis_divisors.size() != rho) {
    throw Error(ErrorKind::InvalidModel, name + ": expected " + std::to_string(rho) + " basis divisors, got " +
                                             std::to_string(basis_divisors.size()));
  }
  for (const auto& b : basis_divisors) {
    if (b.size() != n) throw Error(ErrorKind::InvalidModel, name + ": basis divisor has wrong length");
  }
  // Columns: principal divisors of the standard basis, then basis divisors.
  RatMatrix m(n, RatVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) m[i][j] = Rat(static_cast<long>(rays[i][j]));
    for (std::size_t k = 0; k < rho; ++k) m[i][dim + k] = basis_divisors[k][i];
  }
  auto inv = inverse(m);
  if (!inv) {
    throw Error(ErrorKind::InvalidModel, name + ": basis divisors do not descend to a basis of N^1");
  }
  ToricModel model;
  model.name = std::move(name);
  model.dim = dim;
  model.rays = std::move(rays);
  model.basis_divisors = std::move(basis_divisors);
  for (std::size_t k = 0; k < rho; ++k) model.class_map.push_back((*inv)[dim + k]);
  if (ample) {
    if (ample->size() != rho) throw Error(ErrorKind::InvalidModel, model.name + ": ample class has wrong length");
    if (!toric_is_ample(model, *ample)) {
      throw Error(ErrorKind::InvalidModel, model.name + ": declared ample class " + format_class(*ample) +
                                               " is not ample");
    }
    model.ample = *ample;
  } else {
    for (const auto& v : small_vectors(rho, 4)) {
      if (toric_is_ample(model, NSClass(v))) {
        model.ample = NSClass(v);
        break;
      }
    }
    if (model.ample.size() != rho) {
      throw Error(ErrorKind::InvalidModel, model.name + ": no ample class found (is the variety projective?)");
    }
  }
  return model;
}

SurfaceModel SurfaceModel::create(std::string name, RatMatrix gram, std::vector<NSClass> curves,
                                  std::optional<NSClass> ample) {
  const std::size_t rho = gram.size();
  if (rho == 0) throw Error(ErrorKind::InvalidModel, name + ": empty gram matrix");
  check_symmetric(gram, rho, name);
  check_hodge_signature(gram, name);
  for (const auto& c : curves) {
    if (c.size() != rho) throw Error(ErrorKind::InvalidModel, name + ": curve class has wrong length");
    if (bilinear(gram, c.coords, c.coords) >= 0) {
      throw Error(ErrorKind::InvalidModel, name + ": curve " + format_class(c) + " has non-negative self-intersection");
    }
  }
  SurfaceModel model;
  model.name = std::move(name);
  model.gram = std::move(gram);
  model.negative_curves = std::move(curves);
  auto good = [&](const NSClass& h) {
    if (bilinear(model.gram, h.coords, h.coords) <= 0) return false;
    return std::all_of(model.negative_curves.begin(), model.negative_curves.end(),
                       [&](const NSClass& c) { return bilinear(model.gram, h.coords, c.coords) > 0; });
  };
  if (ample) {
    if (ample->size() != rho || !good(*ample)) {
      throw Error(ErrorKind::InvalidModel, model.name + ": ample reference must have positive square and positive "
                                                        "degree on every listed curve");
    }
    model.ample_reference = *ample;
  } else {
    // The curves alone may not pick a nappe of the positive cone; take the
    // one whose leading coordinate is positive.
    for (const auto& v : small_vectors(rho, 4)) {
      auto lead = std::find_if(v.begin(), v.end(), [](const Rat& x) { return x != 0; });
      if (lead != v.end() && *lead > 0 && good(NSClass(v))) {
        model.ample_reference = NSClass(v);
        break;
      }
    }
    if (model.ample_reference.size() != rho) {
      throw Error(ErrorKind::InvalidModel, model.name + ": could not find an ample reference class");
    }
  }
  return model;
}

AbelianSurfaceModel AbelianSurfaceModel::create(std::string name, RatMatrix gram, NSClass ample) {
  check_symmetric(gram, 3, name);
  check_hodge_signature(gram, name);
  if (ample.size() != 3 || bilinear(gram, ample.coords, ample.coords) <= 0) {
    throw Error(ErrorKind::InvalidModel, name + ": ample class must have positive square");
  }
  return AbelianSurfaceModel{std::move(name), std::move(gram), std::move(ample)};
}

CutkoskyModel CutkoskyModel::create(std::string name, RatMatrix gram, NSClass a, NSClass b) {
  for (const auto& row : gram) {
    for (const auto& x : row) {
      if (!is_integer(x)) throw Error(ErrorKind::InvalidModel, name + ": gram matrix must be integral");
    }
  }
  auto base = AbelianSurfaceModel::create(name + ".base", std::move(gram), a);
  if (!a.is_integral() || b.size() != 3 || !b.is_integral()) {
    throw Error(ErrorKind::InvalidModel, name + ": a and b must be integral classes on the abelian surface");
  }
  if (base.nef_cone().classify(b.coords) != ConeMembership::Outside) {
    throw Error(ErrorKind::InvalidModel, name + ": b = " + format_class(b) + " must not be nef");
  }
  return CutkoskyModel{std::move(name), std::move(base), std::move(a), std::move(b)};
}

int dimension(const Model& model) {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ToricModel>) return m.dim;
        else if constexpr (std::is_same_v<T, BlowupPdModel>) return m.dim;
        else if constexpr (std::is_same_v<T, CutkoskyModel>) return 3;
        else return 2;
      },
      model);
}

int picard_number(const Model& model) {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ToricModel>) return m.picard_number();
        else if constexpr (std::is_same_v<T, BlowupPdModel>) return 2;
        else if constexpr (std::is_same_v<T, SurfaceModel>) return m.picard_number();
        else if constexpr (std::is_same_v<T, AbelianSurfaceModel>) return 3;
        else if constexpr (std::is_same_v<T, CutkoskyModel>) return 4;
        else return 2;
      },
      model);
}

std::string model_name(const Model& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BlowupPdModel>) return m.toric.name;
        else return m.name;
      },
      model);
}

std::string model_kind(const Model& model) {
  static const char* kinds[] = {"toric", "blowup_pd", "surface", "abelian", "cutkosky", "split_ruled"};
  return kinds[model.index()];
}

const ToricModel* as_toric(const Model& model) {
  if (auto* t = std::get_if<ToricModel>(&model)) return t;
  if (auto* b = std::get_if<BlowupPdModel>(&model)) return &b->toric;
  return nullptr;
}

void require_rank(const Model& model, const NSClass& cls) {
  if (static_cast<int>(cls.size()) != picard_number(model)) {
    throw Error(ErrorKind::UnsupportedClass, "class " + format_class(cls) + " has " + std::to_string(cls.size()) +
                                                 " coordinates; model " + model_name(model) + " has Picard number " +
                                                 std::to_string(picard_number(model)));
  }
}

// ---------------------------------------------------------------------------
// Presets

ToricModel projective_space(int d) {
  std::vector<IntVec> rays;
  for (int i = 0; i < d; ++i) {
    IntVec r(d, 0);
    r[i] = 1;
    rays.push_back(r);
  }
  rays.push_back(IntVec(d, -1));
  RatVec h(d + 1, Rat(0));
  h[d] = 1;
  return ToricModel::create("projective_space(" + std::to_string(d) + ")", d, rays, {h}, NSClass{1});
}

BlowupPdModel blowup_pd(int d) {
  if (d < 2 || d > kMaxAmbientDimension) throw Error(ErrorKind::InvalidModel, "blowup_pd needs 2 <= d <= 4");
  std::vector<IntVec> rays;
  for (int i = 0; i < d; ++i) {
    IntVec r(d, 0);
    r[i] = 1;
    rays.push_back(r);
  }
  rays.push_back(IntVec(d, -1));  // D_d: hyperplane away from p, class h
  rays.push_back(IntVec(d, 1));   // D_{d+1}: exceptional divisor, class e
  RatVec h(d + 2, Rat(0)), e(d + 2, Rat(0));
  h[d] = 1;
  e[d + 1] = 1;
  BlowupPdModel out;
  out.dim = d;
  out.toric = ToricModel::create("blowup_pd(" + std::to_string(d) + ")", d, rays, {h, e}, NSClass{2, -1});
  return out;
}

ToricModel hirzebruch(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidModel, "hirzebruch(n) needs n >= 0");
  std::vector<IntVec> rays = {{1, 0}, {0, 1}, {-1, n}, {0, -1}};
  // Basis: fibre f = D_2 and the positive section D_3 (self-intersection n).
  RatVec f(4, Rat(0)), s(4, Rat(0));
  f[2] = 1;
  s[3] = 1;
  return ToricModel::create("hirzebruch(" + std::to_string(n) + ")", 2, rays, {f, s}, NSClass{1, 1});
}

namespace {

RatMatrix golden_gram() {
  return {{Rat(0), Rat(1), Rat(1)}, {Rat(1), Rat(0), Rat(1)}, {Rat(1), Rat(1), Rat(0)}};
}

}  // namespace

CutkoskyModel cutkosky(const NSClass& a, const NSClass& b) {
  return CutkoskyModel::create("cutkosky(" + format_class(a) + ";" + format_class(b) + ")", golden_gram(), a, b);
}

CutkoskyModel cutkosky_golden() {
  return CutkoskyModel::create("cutkosky_golden", golden_gram(), NSClass{1, 1, 0}, NSClass{1, 2, -1});
}

AbelianSurfaceModel abelian_golden() {
  return AbelianSurfaceModel::create("abelian_golden", golden_gram(), NSClass{1, 1, 0});
}

SplitRuledModel split_ruled(long long a) {
  if (a <= 1) throw Error(ErrorKind::InvalidModel, "split_ruled(a) needs a > 1");
  return SplitRuledModel{"split_ruled(" + std::to_string(a) + ")", 1 - a, 1};
}

SurfaceModel blowup_surface() {
  RatMatrix gram = {{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}};
  return SurfaceModel::create("blowup_surface", gram, {NSClass{0, 1}}, NSClass{2, -1});
}

namespace {

std::string lower_trim(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

long parse_small_int(const std::string& s, const std::string& spec) {
  Rat r = parse_rat(s);
  if (!is_integer(r) || !r.get_num().fits_slong_p()) {
    throw Error(ErrorKind::Config, "preset '" + spec + "' expects an integer argument, got '" + s + "'");
  }
  return r.get_num().get_si();
}

}  // namespace

Model preset(std::string_view spec_view) {
  const std::string spec = lower_trim(spec_view);
  std::string name = spec, args;
  auto open = spec.find('(');
  if (open != std::string::npos) {
    if (spec.back() != ')') throw Error(ErrorKind::Config, "malformed preset '" + spec + "'");
    name = spec.substr(0, open);
    args = spec.substr(open + 1, spec.size() - open - 2);
  } else {
    // Short aliases: p2, blowup3, hirzebruch1, split_ruled2.
    std::size_t cut = name.size();
    while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
    if (cut < name.size() && cut > 0) {
      args = name.substr(cut);
      name = name.substr(0, cut);
    }
  }
  if (name == "projective_space" || name == "p") return projective_space(static_cast<int>(parse_small_int(args, spec)));
  if (name == "blowup_pd" || name == "blowup") return blowup_pd(static_cast<int>(parse_small_int(args, spec)));
  if (name == "hirzebruch" || name == "f") return hirzebruch(static_cast<int>(parse_small_int(args, spec)));
  if (name == "split_ruled") return split_ruled(parse_small_int(args, spec));
  if (name == "cutkosky_golden") return cutkosky_golden();
  if (name == "abelian_golden") return abelian_golden();
  if (name == "blowup_surface") return blowup_surface();
  if (name == "cutkosky") {
    auto parts = split(args, ';');
    if (parts.size() != 2) throw Error(ErrorKind::Config, "cutkosky(a;b) expects two classes");
    return cutkosky(parse_class(parts[0]), parse_class(parts[1]));
  }
  if (name == "surface") {
    auto parts = split(args, ';');
    if (parts.empty()) throw Error(ErrorKind::Config, "surface(gram;curves...) expects a gram matrix");
    NSClass flat = parse_class(parts[0]);
    auto rho = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (rho * rho != flat.size()) throw Error(ErrorKind::Config, "surface gram entries must form a square matrix");
    RatMatrix gram(rho, RatVec(rho));
    for (std::size_t i = 0; i < rho; ++i) {
      for (std::size_t j = 0; j < rho; ++j) gram[i][j] = flat[i * rho + j];
    }
    std::vector<NSClass> curves;
    for (std::size_t i = 1; i < parts.size(); ++i) curves.push_back(parse_class(parts[i]));
    return SurfaceModel::create("surface", gram, curves);
  }
  throw Error(ErrorKind::Config, "unknown model preset '" + std::string(spec_view) + "'");
}

// ---------------------------------------------------------------------------
// Toric lattice algebra

NSClass class_of_divisor(const ToricModel& model, const RatVec& divisor) {
  if (divisor.size() != model.rays.size()) {
    throw Error(ErrorKind::UnsupportedClass, "divisor has " + std::to_string(divisor.size()) +
                                                 " ray coefficients; expected " + std::to_string(model.rays.size()));
  }
  return NSClass(mat_vec(model.class_map, divisor));
}

RatVec divisor_of_class(const ToricModel& model, const NSClass& cls) {
  if (cls.size() != model.basis_divisors.size()) {
    throw Error(ErrorKind::UnsupportedClass, "class " + format_class(cls) + " has wrong number of coordinates for " +
                                                 model.name);
  }
  RatVec d(model.rays.size(), Rat(0));
  for (std::size_t k = 0; k < cls.size(); ++k) d = add(d, scale(cls[k], model.basis_divisors[k]));
  return d;
}

RatVec principal_divisor(const ToricModel& model, const RatVec& u) {
  RatVec d;
  for (const auto& r : model.rays) d.push_back(dot(r, u));
  return d;
}

LatticePolytope toric_polytope(const ToricModel& model, const RatVec& divisor) {
  if (divisor.size() != model.rays.size()) {
    throw Error(ErrorKind::UnsupportedClass, "divisor length does not match ray count of " + model.name);
  }
  std::vector<Inequality> ineqs;
  for (std::size_t i = 0; i < model.rays.size(); ++i) ineqs.push_back({model.rays[i], divisor[i]});
  return build_polytope(model.dim, std::move(ineqs));
}

namespace {

std::vector<RatVec> tight_vertices(const LatticePolytope& p, const Inequality& ie) {
  std::vector<RatVec> out;
  for (const auto& v : p.vertices()) {
    if (ie.slack(v) == 0) out.push_back(v);
  }
  return out;
}

bool toric_nef_divisor(const ToricModel& model, const RatVec& divisor) {
  auto p = toric_polytope(model, divisor);
  if (p.is_empty()) return false;
  for (const auto& ie : p.inequalities()) {
    if (tight_vertices(p, ie).empty()) return false;
  }
  return true;
}

}  // namespace

bool toric_is_ample(const ToricModel& model, const NSClass& cls) {
  auto p = toric_polytope(model, divisor_of_class(model, cls));
  if (!p.is_full_dimensional()) return false;
  for (const auto& ie : p.inequalities()) {
    auto pts = tight_vertices(p, ie);
    if (pts.size() < static_cast<std::size_t>(model.dim)) return false;
    RatMatrix diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    if (static_cast<int>(rank(diffs)) != model.dim - 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Surfaces

SurfaceSplit surface_split(const SurfaceModel& model, const NSClass& cls) {
  SurfaceSplit out;
  out.positive = cls;
  const auto& curves = model.negative_curves;
  while (true) {
    std::size_t next = curves.size();
    for (std::size_t j = 0; j < curves.size(); ++j) {
      if (std::binary_search(out.support.begin(), out.support.end(), j)) continue;
      if (bilinear(model.gram, out.positive.coords, curves[j].coords) < 0) {
        next = j;
        break;
      }
    }
    if (next == curves.size()) break;
    out.support.insert(std::upper_bound(out.support.begin(), out.support.end(), next), next);
    const std::size_t k = out.support.size();
    RatMatrix g(k, RatVec(k));
    RatVec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& ci = curves[out.support[i]].coords;
      for (std::size_t j = 0; j < k; ++j) g[i][j] = bilinear(model.gram, ci, curves[out.support[j]].coords);
      rhs[i] = bilinear(model.gram, cls.coords, ci);
    }
    auto sol = solve(g, rhs);
    if (!sol) {
      out.solvable = false;
      return out;
    }
    out.coefficients = *sol;
    out.positive = cls;
    for (std::size_t i = 0; i < k; ++i) out.positive = out.positive - out.coefficients[i] * curves[out.support[i]];
  }
  return out;
}

namespace {

bool surface_nef(const SurfaceModel& m, const NSClass& cls) {
  if (bilinear(m.gram, cls.coords, cls.coords) < 0) return false;
  if (bilinear(m.gram, cls.coords, m.ample_reference.coords) < 0) return false;
  return std::all_of(m.negative_curves.begin(), m.negative_curves.end(),
                     [&](const NSClass& c) { return bilinear(m.gram, cls.coords, c.coords) >= 0; });
}

bool surface_psef(const SurfaceModel& m, const NSClass& cls) {
  auto split = surface_split(m, cls);
  if (!split.solvable) return false;
  for (const auto& c : split.coefficients) {
    if (c < 0) return false;
  }
  return surface_nef(m, split.positive);
}

// ---------------------------------------------------------------------------
// Cutkosky / abelian

bool abelian_nef(const AbelianSurfaceModel& v, const RatVec& c) {
  return v.nef_cone().classify(c) != ConeMembership::Outside;
}

// Segment a + c/s + t (b - a), t in [0, 1].
std::optional<NefSegment> cutkosky_segment(const CutkoskyModel& m, const NSClass& cls) {
  RatVec c = {cls[1] / cls[0], cls[2] / cls[0], cls[3] / cls[0]};
  return nef_segment(m.base, add(m.a.coords, c), sub(m.b.coords, m.a.coords));
}

}  // namespace

std::optional<NefSegment> nef_segment(const AbelianSurfaceModel& surface, const RatVec& p, const RatVec& w) {
  const auto& g = surface.gram;
  Rat alpha = bilinear(g, w, w);
  Rat beta = 2 * bilinear(g, p, w);
  Rat gamma = bilinear(g, p, p);
  std::vector<QuadExt> cand = {QuadExt(0), QuadExt(1)};
  for (const auto& r : quadratic_roots(alpha, beta, gamma)) {
    if (r.sign() > 0 && (r - QuadExt(1)).sign() < 0) cand.push_back(r);
  }
  std::sort(cand.begin(), cand.end());
  auto nef_at = [&](const QuadExt& t) {
    std::vector<QuadExt> pt(3);
    for (int i = 0; i < 3; ++i) pt[i] = QuadExt(p[i]) + t * QuadExt(w[i]);
    return surface.nef_cone().classify(pt) != ConeMembership::Outside;
  };
  std::optional<NefSegment> out;
  auto include = [&](const QuadExt& lo, const QuadExt& hi) {
    if (!out) out = NefSegment{lo, hi};
    else {
      if (lo < out->lo) out->lo = lo;
      if (hi > out->hi) out->hi = hi;
    }
  };
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (nef_at(cand[i])) include(cand[i], cand[i]);
    if (i + 1 < cand.size()) {
      QuadExt mid = (cand[i] + cand[i + 1]) / QuadExt(2);
      if (nef_at(mid)) include(cand[i], cand[i + 1]);
    }
  }
  return out;
}

bool nef_test(const Model& model, const NSClass& cls) {
  require_rank(model, cls);
  if (const auto* t = as_toric(model)) return toric_nef_divisor(*t, divisor_of_class(*t, cls));
  if (const auto* s = std::get_if<SurfaceModel>(&model)) return surface_nef(*s, cls);
  if (const auto* a = std::get_if<AbelianSurfaceModel>(&model)) return abelian_nef(*a, cls.coords);
  if (const auto* c = std::get_if<CutkoskyModel>(&model)) {
    const Rat& s = cls[0];
    RatVec tw = {cls[1], cls[2], cls[3]};
    if (s < 0) return false;
    if (s == 0) return abelian_nef(c->base, tw);
    RatVec scaled = scale(Rat(1) / s, tw);
    return abelian_nef(c->base, add(c->a.coords, scaled)) && abelian_nef(c->base, add(c->b.coords, scaled));
  }
  const auto& r = std::get<SplitRuledModel>(model);
  return cls[0] >= 0 && cls[0] * Rat(static_cast<long>(std::min(r.d1, r.d2))) + cls[1] >= 0;
}

bool psef_test(const Model& model, const NSClass& cls) {
  require_rank(model, cls);
  if (const auto* t = as_toric(model)) return !toric_polytope(*t, divisor_of_class(*t, cls)).is_empty();
  if (const auto* s = std::get_if<SurfaceModel>(&model)) return surface_psef(*s, cls);
  if (const auto* a = std::get_if<AbelianSurfaceModel>(&model)) return abelian_nef(*a, cls.coords);
  if (const auto* c = std::get_if<CutkoskyModel>(&model)) {
    const Rat& s = cls[0];
    if (s < 0) return false;
    if (s == 0) return abelian_nef(c->base, {cls[1], cls[2], cls[3]});
    return cutkosky_segment(*c, cls).has_value();
  }
  const auto& r = std::get<SplitRuledModel>(model);
  return cls[0] >= 0 && cls[0] * Rat(static_cast<long>(std::max(r.d1, r.d2))) + cls[1] >= 0;
}

bool big_test(const Model& model, const NSClass& cls) {
  require_rank(model, cls);
  if (const auto* t = as_toric(model)) return toric_polytope(*t, divisor_of_class(*t, cls)).is_full_dimensional();
  if (const auto* s = std::get_if<SurfaceModel>(&model)) {
    if (!surface_psef(*s, cls)) return false;
    auto split = surface_split(*s, cls);
    return bilinear(s->gram, split.positive.coords, split.positive.coords) > 0;
  }
  if (const auto* a = std::get_if<AbelianSurfaceModel>(&model)) {
    return a->nef_cone().classify(cls.coords) == ConeMembership::Interior;
  }
  if (const auto* c = std::get_if<CutkoskyModel>(&model)) {
    if (cls[0] <= 0) return false;
    auto seg = cutkosky_segment(*c, cls);
    return seg && seg->lo < seg->hi;
  }
  const auto& r = std::get<SplitRuledModel>(model);
  return cls[0] > 0 && cls[0] * Rat(static_cast<long>(std::max(r.d1, r.d2))) + cls[1] > 0;
}

}  // namespace asymvol
