#include "asymvol/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "asymvol/error.hpp"
#include "asymvol/model_io.hpp"
#include "asymvol/properties.hpp"
#include "asymvol/volume.hpp"
#include "json.hpp"

namespace asymvol {

namespace {

using json = nlohmann::ordered_json;

constexpr int kDecimalDigits = 17;
constexpr const char* kDefaultModel = "blowup3";

struct RunConfig {
  std::string model = kDefaultModel;
  std::string cls;
  std::string what = "vol";
  long long ray = -1;
  long long to = 0;
  std::string slice;
  std::uint64_t seed = 0;
  std::string format = "table";
  std::uint64_t budget = kDefaultLatticeBudget;
  // check
  std::string property = "log_concavity";
  std::size_t n = 100;
  int degree = 2;
  bool records = false;
  std::string scalars = "2,1/3,7/2";
  // sweep
  double tolerance = -1;
  // family
  std::string rule;
  std::optional<int> rank;
  std::optional<int> vars;
  bool scan = false;
  bool no_ample_check = false;
  int depth = 8;
  long long box = 3;
  std::string ord_direction;
  bool cones = false;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render_table(const Table& t, const std::string& format, const json& meta, std::ostream& out) {
  if (format == "csv") {
    for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << csv_cell(t.columns[k]);
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_cell(row[k]);
      out << "\n";
    }
    return;
  }
  if (format == "json") {
    json j = meta;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    out << j.dump(2) << "\n";
    return;
  }
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t k = 0; k < t.columns.size(); ++k) width[k] = t.columns[k].size();
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      s += (k ? "  " : "") + cells[k] + std::string(width[k] - cells[k].size(), ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << "\n";
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
}

json exact_json(const QuadExt& v) { return {{"exact", v.to_string()}, {"decimal", v.to_decimal(kDecimalDigits)}}; }

// Cutkosky classes may be given as the 3-coordinate twist c, meaning s = 1.
NSClass volume_class(const Model& model, NSClass c) {
  if (std::holds_alternative<CutkoskyModel>(model) && c.size() == 3) c.coords.insert(c.coords.begin(), Rat(1));
  return c;
}

Slice2D volume_slice(const Model& model, Slice2D s) {
  if (std::holds_alternative<CutkoskyModel>(model) && s.origin.size() == 3) {
    s.origin.insert(s.origin.begin(), Rat(1));
    s.u.insert(s.u.begin(), Rat(0));
    s.v.insert(s.v.begin(), Rat(0));
  }
  return s;
}

std::size_t require_ray(const RunConfig& cfg) {
  if (cfg.ray < 0) throw Error(ErrorKind::Config, "--what " + cfg.what + " needs --ray I");
  return static_cast<std::size_t>(cfg.ray);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void validate(const RunConfig& cfg) {
  if (cfg.format != "table" && cfg.format != "csv" && cfg.format != "json") {
    throw Error(ErrorKind::Config, "--format must be table, csv or json");
  }
  if (cfg.budget == 0) throw Error(ErrorKind::Config, "--budget must be positive");
}

// ---------------------------------------------------------------------------

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  if (cfg.cls.empty()) throw Error(ErrorKind::Config, "eval needs --class");
  Model model = load_model(cfg.model);
  NSClass raw = parse_class(cfg.cls);
  json j;
  j["model"] = model_name(model);
  j["class"] = format_class(raw);
  j["what"] = cfg.what;
  std::string text;
  if (cfg.what == "vol") {
    NSClass c = volume_class(model, raw);
    VolumeResult r = cfg.to > 0 ? vol_oracle(model, c, geometric_schedule(cfg.to), cfg.budget) : vol(model, c);
    text = r.to_string();
    j["value"] = exact_json(r.value);
    j["provenance"] = to_string(r.provenance);
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (r.provenance == Provenance::OracleExtrapolated) {
      j["max_m"] = r.max_m;
      j["error_estimate"] = r.error_estimate;
    }
  } else if (cfg.what == "hhat") {
    HhatVector h = hhat(model, raw);
    json vals = json::array();
    for (std::size_t i = 0; i < h.values.size(); ++i) {
      text += (i ? " " : "") + std::string("hhat^") + std::to_string(i) + "=" + format_rat(h.values[i]);
      vals.push_back(exact_json(QuadExt(h.values[i])));
    }
    text += " (closed_form)";
    j["value"] = vals;
    j["provenance"] = "closed_form";
  } else if (cfg.what == "ord" || cfg.what == "rvol") {
    std::size_t ray = require_ray(cfg);
    Rat v;
    if (cfg.what == "ord") {
      v = ord(model, ray, raw);
    } else {
      const ToricModel* t = as_toric(model);
      if (!t) throw Error(ErrorKind::UnsupportedModel, "restricted volume is available on toric models only");
      v = restricted_vol(*t, ray, raw);
    }
    text = format_rat(v) + " (closed_form)";
    j["ray"] = cfg.ray;
    j["value"] = exact_json(QuadExt(v));
    j["provenance"] = "closed_form";
  } else {
    throw Error(ErrorKind::Config, "--what must be vol, hhat, ord or rvol");
  }
  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    Table t{{"model", "class", "what", "value"}, {{model_name(model), format_class(raw), cfg.what, text}}};
    render_table(t, "csv", {}, out);
  } else {
    out << text << "\n";
  }
  return 0;
}

int cmd_grid(const RunConfig& cfg, std::ostream& out) {
  if (cfg.slice.empty()) throw Error(ErrorKind::Config, "grid needs --slice");
  Model model = load_model(cfg.model);
  Slice2D raw = Slice2D::parse(cfg.slice);
  auto whats = split_list(cfg.what);
  if (whats.empty()) throw Error(ErrorKind::Config, "--what lists no invariants");
  for (const auto& w : whats) {
    if (w != "vol" && w != "hhat" && w != "ord" && w != "rvol") {
      throw Error(ErrorKind::Config, "--what entries must be vol, hhat, ord or rvol");
    }
    if (w == "ord" || w == "rvol") require_ray(cfg);
  }
  const bool uses_hhat = std::find(whats.begin(), whats.end(), "hhat") != whats.end();
  const bool uses_vol = whats.size() > (uses_hhat ? 1u : 0u);
  Slice2D vslice = volume_slice(model, raw);
  if (uses_vol && static_cast<int>(vslice.origin.size()) != picard_number(model)) {
    throw Error(ErrorKind::Config, "slice dimension does not match the Picard number");
  }
  if (std::holds_alternative<CutkoskyModel>(model) && uses_hhat && raw.origin.size() != 3) {
    throw Error(ErrorKind::Config, "hhat on a Cutkosky model takes 3-coordinate base classes");
  }
  Table t;
  t.columns = {"i", "j"};
  for (std::size_t k = 0; k < raw.origin.size(); ++k) t.columns.push_back("c" + std::to_string(k + 1));
  const int d = dimension(model);
  int hhat_len = 0;
  for (const auto& w : whats) {
    if (w == "hhat") {
      hhat_len = std::holds_alternative<CutkoskyModel>(model) ? 3 : d + 1;
      for (int i = 0; i < hhat_len; ++i) t.columns.push_back("hhat" + std::to_string(i));
    } else {
      std::string name = w == "vol" ? "vol" : w + "_" + std::to_string(cfg.ray);
      t.columns.push_back(name);
      t.columns.push_back(name + "_decimal");
    }
  }
  auto cell_pair = [](const QuadExt& v, std::vector<std::string>& row) {
    row.push_back(v.to_string());
    row.push_back(v.to_decimal(kDecimalDigits));
  };
  for (int i = 0; i <= raw.steps_u; ++i) {
    for (int j = 0; j <= raw.steps_v; ++j) {
      NSClass c(raw.point(i, j));
      NSClass vc(vslice.point(i, j));
      std::vector<std::string> row = {std::to_string(i), std::to_string(j)};
      for (const auto& x : c.coords) row.push_back(format_rat(x));
      for (const auto& w : whats) {
        try {
          if (w == "vol") {
            cell_pair(vol(model, vc).value, row);
          } else if (w == "hhat") {
            for (const auto& x : hhat(model, c).values) row.push_back(format_rat(x));
          } else if (w == "ord") {
            if (!big_test(model, vc)) {
              row.insert(row.end(), {"NA", "NA"});
            } else {
              cell_pair(QuadExt(ord(model, require_ray(cfg), vc)), row);
            }
          } else {
            const ToricModel* tm = as_toric(model);
            if (!tm) throw Error(ErrorKind::UnsupportedModel, "restricted volume is available on toric models only");
            if (!big_test(model, vc)) {
              row.insert(row.end(), {"NA", "NA"});
            } else {
              cell_pair(QuadExt(restricted_vol(*tm, require_ray(cfg), vc)), row);
            }
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::UnsupportedClass) throw;
          row.insert(row.end(), w == "hhat" ? hhat_len : 2, "NA");
        }
      }
      t.rows.push_back(std::move(row));
    }
  }
  json meta;
  meta["command"] = "grid";
  meta["model"] = model_name(model);
  meta["slice"] = cfg.slice;
  meta["decimal_digits"] = kDecimalDigits;
  render_table(t, cfg.format, meta, out);
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  Model model = load_model(cfg.model);
  NSClass c;
  if (!cfg.cls.empty()) {
    c = volume_class(model, parse_class(cfg.cls));
  } else if (std::holds_alternative<CutkoskyModel>(model)) {
    c = NSClass{1, 0, 0, 0};
  } else {
    throw Error(ErrorKind::Config, "sweep needs --class");
  }
  if (cfg.to < 1) throw Error(ErrorKind::Config, "sweep needs --to M with M >= 1");
  auto schedule = geometric_schedule(cfg.to);
  std::vector<FujitaStep> steps;
  std::string kind = cfg.what == "vol" ? "sections" : "fujita";
  if (cfg.what == "vol") {
    auto r = vol_oracle(model, c, schedule, cfg.budget);
    for (const auto& s : r.sequence) steps.push_back({s.m, s.value});
  } else if (cfg.what == "fujita") {
    steps = fujita_sweep(model, c, schedule, cfg.budget);
  } else {
    throw Error(ErrorKind::Config, "sweep --what must be fujita or vol");
  }
  std::optional<QuadExt> target;
  try {
    target = vol(model, c).value;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedClass) throw;
  }
  Table t{{"m", "value", "value_decimal", "relative_error"}, {}};
  bool ok = true;
  std::vector<std::string> failures;
  double last_rel = 0;
  for (const auto& s : steps) {
    QuadExt v(s.value);
    std::string rel = "NA";
    if (target && *target != QuadExt(0)) {
      last_rel = std::fabs(v.to_double() - target->to_double()) / std::fabs(target->to_double());
      std::ostringstream os;
      os << std::setprecision(6) << last_rel;
      rel = os.str();
    }
    if (target && as_toric(model) && v > *target) {
      ok = false;
      failures.push_back("m=" + std::to_string(s.m) + " exceeds vol");
    }
    t.rows.push_back({std::to_string(s.m), v.to_string(), v.to_decimal(kDecimalDigits), rel});
  }
  if (cfg.tolerance >= 0) {
    if (!target) throw Error(ErrorKind::Config, "--tolerance needs a class with a closed-form volume");
    if (!(last_rel < cfg.tolerance)) {
      ok = false;
      failures.push_back("final relative error above tolerance");
    }
  }
  json meta;
  meta["command"] = "sweep";
  meta["kind"] = kind;
  meta["model"] = model_name(model);
  meta["class"] = format_class(c);
  if (target) meta["vol"] = exact_json(*target);
  meta["passed"] = ok;
  meta["failures"] = failures;
  meta["decimal_digits"] = kDecimalDigits;
  render_table(t, cfg.format, meta, out);
  if (cfg.format == "table") {
    if (target) out << "vol: " << target->to_string() << "\n";
    for (const auto& f : failures) out << "failure: " << f << "\n";
    out << "status: " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_zariski(const RunConfig& cfg, std::ostream& out) {
  if (cfg.cls.empty()) throw Error(ErrorKind::Config, "zariski needs --class");
  Model model = load_model(cfg.model);
  const auto* s = std::get_if<SurfaceModel>(&model);
  if (!s) throw Error(ErrorKind::UnsupportedModel, "zariski needs a surface model");
  NSClass c = parse_class(cfg.cls);
  auto z = zariski(*s, c);
  Rat v = bilinear(s->gram, z.positive.coords, z.positive.coords);
  json j;
  j["model"] = s->name;
  j["class"] = format_class(c);
  j["positive"] = format_class(z.positive);
  j["negative"] = format_class(z.negative);
  json parts = json::array();
  for (std::size_t k = 0; k < z.support.size(); ++k) {
    parts.push_back({{"curve", z.support[k]}, {"coefficient", format_rat(z.coefficients[k])}});
  }
  j["support"] = parts;
  j["vol"] = exact_json(QuadExt(v));
  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
    return 0;
  }
  if (cfg.format == "csv") {
    Table t{{"class", "positive", "negative", "vol"}, {{format_class(c), format_class(z.positive), format_class(z.negative), format_rat(v)}}};
    render_table(t, "csv", {}, out);
    return 0;
  }
  out << "P = (" << format_class(z.positive) << ")\n";
  out << "N = (" << format_class(z.negative) << ")";
  for (std::size_t k = 0; k < z.support.size(); ++k) {
    out << (k ? " + " : " = ") << format_rat(z.coefficients[k]) << "*C" << z.support[k];
  }
  out << "\nvol = " << format_rat(v) << " (closed_form)\n";
  return 0;
}

std::string rat_row(const std::vector<std::vector<Rat>>& grid, int i) {
  std::string s;
  for (std::size_t j = 0; j < grid[i].size(); ++j) s += (j ? " " : "") + format_rat(grid[i][j]);
  return s;
}

int cmd_family(const RunConfig& cfg, std::ostream& out) {
  std::optional<MonomialIdealFamily> fam;
  if (!cfg.rule.empty()) {
    fam = parse_rule(cfg.rule, cfg.rank, cfg.vars);
  } else if (!cfg.model.empty() && cfg.model != kDefaultModel) {
    auto file = read_model_file(cfg.model);
    if (!file.family) throw Error(ErrorKind::Config, "'" + cfg.model + "' defines no family");
    fam = *file.family;
  } else {
    throw Error(ErrorKind::Config, "family needs --rule or --model FILE with a family block");
  }
  if (cfg.box < 0) throw Error(ErrorKind::Config, "--box must be nonnegative");
  IndexBox box = IndexBox::cube(fam->rank(), -cfg.box, cfg.box);
  json j;
  j["family"] = fam->description();
  j["rank"] = fam->rank();
  j["vars"] = fam->variable_count();
  bool ok = true;
  std::ostringstream text;
  text << "family: " << fam->description() << "\n";
  auto mult = verify_multiplicativity(*fam, box);
  ok = ok && mult.passed();
  text << "multiplicativity: " << (mult.passed() ? "pass" : "fail") << " (" << mult.pairs_checked << " pairs)\n";
  json mj;
  mj["passed"] = mult.passed();
  mj["pairs_checked"] = mult.pairs_checked;
  json viol = json::array();
  for (const auto& v : mult.violations) {
    viol.push_back({{"m", v.m}, {"l", v.l}, {"witness", v.witness}, {"note", v.note}});
    text << "violation: m=(" << format_class(NSClass(to_rat(v.m))) << ") l=(" << format_class(NSClass(to_rat(v.l)))
         << ") " << v.note << "\n";
  }
  mj["violations"] = viol;
  j["multiplicativity"] = mj;
  if (!cfg.ord_direction.empty()) {
    RatVec dir = parse_class(cfg.ord_direction).coords;
    auto est = asymptotic_ord0(*fam, dir, cfg.depth);
    text << "ord0: " << format_rat(est.value) << " (depth " << est.depth << ")\n";
    json seq = json::array();
    for (const auto& s : est.sequence) seq.push_back(format_rat(s));
    j["ord0"] = {{"direction", cfg.ord_direction}, {"value", format_rat(est.value)}, {"sequence", seq}};
  }
  if (cfg.cones) {
    auto ce = cones_estimate(*fam, box);
    text << "nef cone generators: " << ce.nef_generators << "\n";
    text << "psef cone generators: " << ce.psef_generators << "\n";
    j["cones"] = {{"nef_generators", ce.nef_generators}, {"psef_generators", ce.psef_generators}};
  }
  if (cfg.scan) {
    std::string spec = cfg.slice;
    if (spec.empty()) {
      if (fam->rank() != 2) throw Error(ErrorKind::Config, "--scan on rank " + std::to_string(fam->rank()) + " needs --slice");
      spec = "0,0;2,0;0,2;4,4";
    }
    auto rep = regularity_scan(*fam, Slice2D::parse(spec), cfg.depth, !cfg.no_ample_check);
    text << "scan: slice " << spec << " depth " << rep.depth << "\n";
    text << "ample_indices: " << (rep.ample_indices ? "yes" : "no") << "\n";
    text << "max_second_difference: " << format_rat(rep.max_second) << "\n";
    text << "linear: " << (rep.linear() ? "yes" : "no") << "\n";
    text << "creases: " << rep.creases.size() << "\n";
    for (std::size_t i = 0; i < rep.values.size(); ++i) text << "row " << i << ": " << rat_row(rep.values, static_cast<int>(i)) << "\n";
    json vals = json::array();
    for (const auto& r : rep.values) {
      json jr = json::array();
      for (const auto& x : r) jr.push_back(format_rat(x));
      vals.push_back(jr);
    }
    json creases = json::array();
    for (auto [a, b] : rep.creases) creases.push_back({a, b});
    j["scan"] = {{"slice", spec},
                 {"depth", rep.depth},
                 {"ample_indices", rep.ample_indices},
                 {"max_second_difference", format_rat(rep.max_second)},
                 {"linear", rep.linear()},
                 {"creases", creases},
                 {"values", vals}};
  }
  j["passed"] = ok;
  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << text.str() << "status: " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  Model model = load_model(cfg.model);
  CheckOptions opts;
  opts.seed = cfg.seed;
  opts.samples = cfg.n;
  opts.keep_records = cfg.records;
  auto slice_or_default = [&]() {
    if (!cfg.slice.empty()) return volume_slice(model, Slice2D::parse(cfg.slice));
    if (picard_number(model) != 2) throw Error(ErrorKind::Config, "this property needs --slice on this model");
    return Slice2D::parse("-2,-2;4,0;0,4;16,16");
  };
  std::vector<std::string> props = split_list(cfg.property);
  if (props.size() == 1 && props[0] == "all") {
    props = {"log_concavity", "homogeneity", "lipschitz"};
    if (as_toric(model)) props.push_back("invariance");
  }
  if (props.empty()) throw Error(ErrorKind::Config, "--property is empty");
  std::vector<PropertyReport> reports;
  for (const auto& p : props) {
    if (p == "log_concavity") {
      reports.push_back(check_log_concavity(model, big_class_sampler(model), opts));
    } else if (p == "homogeneity") {
      std::vector<Rat> sc;
      for (const auto& s : split_list(cfg.scalars)) sc.push_back(parse_rat(s));
      reports.push_back(check_homogeneity(model, big_class_sampler(model), sc, opts));
    } else if (p == "invariance") {
      const ToricModel* t = as_toric(model);
      if (!t) throw Error(ErrorKind::Config, "invariance needs a toric model");
      reports.push_back(check_numerical_invariance(*t, big_class_sampler(model), opts));
    } else if (p == "lipschitz") {
      reports.push_back(check_lipschitz(model, slice_or_default()));
    } else if (p == "chamber_fit") {
      reports.push_back(chamber_fit_report(model, slice_or_default(), cfg.degree));
    } else {
      throw Error(ErrorKind::Config, "unknown property '" + p + "'");
    }
  }
  bool ok = std::all_of(reports.begin(), reports.end(), [](const PropertyReport& r) { return r.passed(); });
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(json::parse(r.to_json()));
    json j;
    j["seed"] = cfg.seed;
    j["passed"] = ok;
    j["reports"] = arr;
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    Table t{{"property", "model", "samples", "violations", "worst_margin", "status"}, {}};
    for (const auto& r : reports) {
      std::ostringstream m;
      m << std::setprecision(12) << r.worst_margin;
      t.rows.push_back({r.property, r.model, std::to_string(r.samples), std::to_string(r.violations.size()), m.str(),
                        r.passed() ? "pass" : "fail"});
    }
    render_table(t, "csv", {}, out);
  } else {
    for (std::size_t k = 0; k < reports.size(); ++k) out << (k ? "\n" : "") << reports[k].to_text();
  }
  return ok ? 0 : 1;
}

int exit_code(ErrorKind kind) { return kind == ErrorKind::Config || kind == ErrorKind::Parse ? 2 : 1; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volumes, orders and cohomology growth of divisor classes on catalog models", "asymvol"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "preset name or model file")->capture_default_str();
    sub->add_option("--format", cfg.format, "table, csv or json")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "lattice point budget")->capture_default_str();
  };
  auto* eval = app.add_subcommand("eval", "invariant of one class");
  common(eval);
  eval->add_option("--class", cfg.cls, "class coordinates c1,c2,...");
  eval->add_option("--what", cfg.what, "vol, hhat, ord or rvol")->capture_default_str();
  eval->add_option("--ray", cfg.ray, "ray or curve index for ord / rvol");
  eval->add_option("--to", cfg.to, "use the section-count oracle up to this m");

  auto* grid = app.add_subcommand("grid", "invariants over a 2D slice");
  common(grid);
  grid->add_option("--slice", cfg.slice, "x0,..;u1,..;v1,..;n1,n2");
  grid->add_option("--what", cfg.what, "comma list of vol, hhat, ord, rvol")->capture_default_str();
  grid->add_option("--ray", cfg.ray, "ray or curve index for ord / rvol");

  auto* sweep = app.add_subcommand("sweep", "volume sequence along m");
  common(sweep);
  sweep->add_option("--class", cfg.cls, "class coordinates");
  sweep->add_option("--to", cfg.to, "largest m");
  sweep->add_option("--what", cfg.what, "fujita or vol");
  sweep->add_option("--tolerance", cfg.tolerance, "fail when the final relative error is not below this");

  auto* zar = app.add_subcommand("zariski", "Zariski decomposition on a surface model");
  common(zar);
  zar->add_option("--class", cfg.cls, "class coordinates");

  auto* fam = app.add_subcommand("family", "graded family checks");
  common(fam);
  fam->add_option("--rule", cfg.rule, "e.g. \"threshold m1+2m2\"");
  fam->add_option("--rank", cfg.rank, "index rank");
  fam->add_option("--vars", cfg.vars, "number of variables");
  fam->add_flag("--scan", cfg.scan, "regularity scan of ord0 over a slice");
  fam->add_option("--slice", cfg.slice, "slice for --scan");
  fam->add_option("--depth", cfg.depth, "multiples used by ord0")->capture_default_str();
  fam->add_option("--box", cfg.box, "index box [-B, B]^r")->capture_default_str();
  fam->add_option("--ord", cfg.ord_direction, "estimate ord0 along this direction");
  fam->add_flag("--cones", cfg.cones, "estimate nef and psef cones");
  fam->add_flag("--no-ample-check", cfg.no_ample_check, "scan without the ample-indices requirement");

  auto* check = app.add_subcommand("check", "property checks");
  common(check);
  check->add_option("--property", cfg.property, "log_concavity, homogeneity, invariance, lipschitz, chamber_fit, all")
      ->capture_default_str();
  check->add_option("--n", cfg.n, "samples")->capture_default_str();
  check->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  check->add_option("--slice", cfg.slice, "slice for lipschitz / chamber_fit");
  check->add_option("--degree", cfg.degree, "chamber fit degree")->capture_default_str();
  check->add_option("--scalars", cfg.scalars, "homogeneity scalars")->capture_default_str();
  check->add_flag("--records", cfg.records, "emit one record per sample");

  std::vector<const char*> argv = {"asymvol"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (sweep->parsed() && !sweep->count("--what")) cfg.what = "fujita";
  try {
    validate(cfg);
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (grid->parsed()) return cmd_grid(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    if (zar->parsed()) return cmd_zariski(cfg, out);
    if (fam->parsed()) return cmd_family(cfg, out);
    return cmd_check(cfg, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace asymvol
