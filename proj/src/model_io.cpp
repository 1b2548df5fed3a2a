#include "asymvol/model_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "asymvol/error.hpp"

namespace asymvol {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> words;
  std::string rest(std::size_t from) const {
    std::string out;
    for (std::size_t i = from; i < words.size(); ++i) out += (i > from ? " " : "") + words[i];
    return out;
  }
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ws(raw);
    Line line{n, {}};
    for (std::string w; ws >> w;) line.words.push_back(w);
    if (!line.words.empty()) out.push_back(std::move(line));
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long long parse_int(const std::string& w) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(w, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "expected an integer, got '" + w + "'");
  }
  if (used != w.size()) throw Error(ErrorKind::Parse, "expected an integer, got '" + w + "'");
  return v;
}

IntVec parse_int_list(std::string_view s) {
  IntVec out;
  for (const auto& w : split(s, ',')) out.push_back(parse_int(w));
  return out;
}

RatVec parse_rat_words(const Line& line, std::size_t from) {
  RatVec out;
  for (std::size_t i = from; i < line.words.size(); ++i) out.push_back(parse_rat(line.words[i]));
  return out;
}

IntVec parse_int_words(const Line& line, std::size_t from) {
  IntVec out;
  for (std::size_t i = from; i < line.words.size(); ++i) out.push_back(parse_int(line.words[i]));
  return out;
}

int infer_rank(std::string_view poly) {
  int rank = 1;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] != 'm' && poly[i] != 'M') continue;
    std::size_t j = i + 1;
    while (j < poly.size() && std::isdigit(static_cast<unsigned char>(poly[j]))) ++j;
    if (j > i + 1) rank = std::max(rank, std::stoi(std::string(poly.substr(i + 1, j - i - 1))));
  }
  return rank;
}

MonomialIdealFamily rule_from_words(const std::vector<std::string>& w, std::optional<int> rank, std::optional<int> vars,
                                    const std::optional<Model>& self) {
  if (w.empty()) throw Error(ErrorKind::Parse, "empty rule");
  const std::string& kind = w[0];
  auto rest = [&](std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < w.size(); ++i) out += w[i];
    return out;
  };
  if (kind == "threshold") {
    if (w.size() < 2) throw Error(ErrorKind::Parse, "rule threshold needs a form L(m)");
    std::string poly = rest(1);
    int r = rank.value_or(infer_rank(poly));
    return threshold_family(r, vars.value_or(2), IndexPolynomial::parse(poly, r));
  }
  if (kind == "weighted") {
    if (w.size() < 3) throw Error(ErrorKind::Parse, "rule weighted needs a weight vector and a form L(m)");
    RatVec lambda;
    for (const auto& s : split(w[1], ',')) lambda.push_back(parse_rat(s));
    if (vars && *vars != static_cast<int>(lambda.size())) {
      throw Error(ErrorKind::Parse, "weight vector length does not match vars");
    }
    std::string poly = rest(2);
    int r = rank.value_or(infer_rank(poly));
    return weighted_family(r, lambda, IndexPolynomial::parse(poly, r));
  }
  if (kind == "toric") {
    if (w.size() != 3) throw Error(ErrorKind::Parse, "rule toric needs <model-ref> <chart>");
    Model m = w[1] == "self" ? (self ? *self : throw Error(ErrorKind::Parse, "no model defined before 'self'"))
                             : load_model(w[1]);
    const ToricModel* t = as_toric(m);
    if (!t) throw Error(ErrorKind::UnsupportedModel, "rule toric needs a toric model");
    std::vector<std::size_t> chart;
    for (auto i : parse_int_list(w[2])) {
      if (i < 0) throw Error(ErrorKind::Parse, "negative ray index in chart");
      chart.push_back(static_cast<std::size_t>(i));
    }
    if (rank && *rank != t->picard_number()) throw Error(ErrorKind::Parse, "rank does not match the model");
    if (vars && *vars != t->dim) throw Error(ErrorKind::Parse, "vars does not match the model dimension");
    return family_from_toric(*t, chart);
  }
  if (kind == "table") throw Error(ErrorKind::Parse, "rule table needs a family block with ideal lines");
  throw Error(ErrorKind::Parse, "unknown rule '" + kind + "'");
}

class FileParser {
 public:
  FileParser(std::string_view text, std::string_view origin) : lines_(tokenize(text)), origin_(origin) {}

  ModelFile run() {
    ModelFile out;
    std::size_t i = 0;
    while (i < lines_.size()) {
      const Line& l = lines_[i];
      current_line_ = l.number;
      try {
        if (l.words[0] == "model") {
          if (out.model) throw Error(ErrorKind::Parse, "second model block");
          out.model = parse_model(i);
        } else if (l.words[0] == "family") {
          if (out.family) throw Error(ErrorKind::Parse, "second family block");
          out.family = parse_family(i, out.model);
        } else {
          throw Error(ErrorKind::Parse, "expected 'model' or 'family', got '" + l.words[0] + "'");
        }
      } catch (const Error& e) {
        rethrow(e, current_line_);
      }
    }
    if (!out.model && !out.family) throw Error(ErrorKind::Parse, std::string(origin_) + ": no model or family block");
    return out;
  }

 private:
  std::vector<Line> lines_;
  std::string origin_;
  std::size_t current_line_ = 0;

  [[noreturn]] void rethrow(const Error& e, std::size_t line) const {
    throw Error(e.kind(), origin_ + ":" + std::to_string(line) + ": " + e.what());
  }

  bool block_start(const Line& l) const { return l.words[0] == "model" || l.words[0] == "family"; }

  Model parse_model(std::size_t& i) {
    const Line& head = lines_[i];
    current_line_ = head.number;
    if (head.words.size() < 2) throw Error(ErrorKind::Parse, "model needs a kind");
    const std::string kind = head.words[1];
    const std::size_t head_line = head.number;
    ++i;
    std::string name;
    std::optional<NSClass> ample;
    // toric
    std::optional<int> dim;
    std::vector<IntVec> rays;
    std::vector<RatVec> basis;
    std::vector<std::pair<std::size_t, std::size_t>> basis_rays;  // (ray, line)
    // surface / cutkosky
    std::map<std::pair<std::size_t, std::size_t>, Rat> gram;
    std::size_t gram_size = 0;
    std::vector<NSClass> curves;
    std::optional<NSClass> a, b;

    if (kind == "split_ruled") {
      if (head.words.size() != 4) throw Error(ErrorKind::Parse, "model split_ruled needs d1 d2");
    } else if (head.words.size() != 2) {
      throw Error(ErrorKind::Parse, "unexpected words after 'model " + kind + "'");
    }
    auto allow = [&](const Line& l, std::initializer_list<const char*> kinds) {
      for (const char* k : kinds) {
        if (kind == k) return;
      }
      throw Error(ErrorKind::Parse, "'" + l.words[0] + "' is not valid in a " + kind + " model");
    };
    for (; i < lines_.size() && !block_start(lines_[i]); ++i) {
      const Line& l = lines_[i];
      current_line_ = l.number;
      const std::string& key = l.words[0];
      if (key == "name") {
        name = l.rest(1);
      } else if (key == "ample") {
        ample = NSClass(parse_rat_words(l, 1));
      } else if (key == "dim") {
        allow(l, {"toric"});
        if (l.words.size() != 2) throw Error(ErrorKind::Parse, "dim takes one integer");
        dim = static_cast<int>(parse_int(l.words[1]));
      } else if (key == "ray") {
        allow(l, {"toric"});
        rays.push_back(parse_int_words(l, 1));
      } else if (key == "basis") {
        allow(l, {"toric"});
        for (auto k : parse_int_words(l, 1)) {
          if (k < 0) throw Error(ErrorKind::Parse, "negative ray index");
          basis_rays.emplace_back(static_cast<std::size_t>(k), l.number);
        }
      } else if (key == "basis_divisor") {
        allow(l, {"toric"});
        basis.push_back(parse_rat_words(l, 1));
      } else if (key == "gram") {
        allow(l, {"surface", "cutkosky"});
        if (l.words.size() != 4) throw Error(ErrorKind::Parse, "gram takes r c value");
        long long r = parse_int(l.words[1]), c = parse_int(l.words[2]);
        if (r < 0 || c < 0) throw Error(ErrorKind::Parse, "negative gram index");
        Rat v = parse_rat(l.words[3]);
        auto key1 = std::make_pair(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        auto key2 = std::make_pair(key1.second, key1.first);
        for (const auto& k : {key1, key2}) {
          auto it = gram.find(k);
          if (it != gram.end() && it->second != v) throw Error(ErrorKind::Parse, "conflicting gram entry");
          gram[k] = v;
        }
        gram_size = std::max({gram_size, key1.first + 1, key1.second + 1});
      } else if (key == "curve") {
        allow(l, {"surface"});
        curves.emplace_back(parse_rat_words(l, 1));
      } else if (key == "a" || key == "b") {
        allow(l, {"cutkosky"});
        (key == "a" ? a : b) = NSClass(parse_rat_words(l, 1));
      } else {
        throw Error(ErrorKind::Parse, "unknown directive '" + key + "'");
      }
    }
    RatMatrix g(gram_size, RatVec(gram_size, Rat(0)));
    for (const auto& [k, v] : gram) g[k.first][k.second] = v;
    current_line_ = head_line;
    if (kind == "toric") {
      if (!dim) throw Error(ErrorKind::Parse, "toric model needs 'dim'");
      for (auto [k, line] : basis_rays) {
        if (k >= rays.size()) {
          current_line_ = line;
          throw Error(ErrorKind::Parse, "basis ray index " + std::to_string(k) + " out of range");
        }
        RatVec e(rays.size(), Rat(0));
        e[k] = 1;
        basis.push_back(e);
      }
      if (basis.empty()) throw Error(ErrorKind::Parse, "toric model needs 'basis' or 'basis_divisor'");
      return ToricModel::create(name.empty() ? "toric" : name, *dim, rays, basis, ample);
    }
    if (kind == "surface") {
      if (gram_size == 0) throw Error(ErrorKind::Parse, "surface model needs 'gram' entries");
      return SurfaceModel::create(name.empty() ? "surface" : name, g, curves, ample);
    }
    if (kind == "cutkosky") {
      if (gram_size == 0 || !a || !b) throw Error(ErrorKind::Parse, "cutkosky model needs 'gram', 'a' and 'b'");
      CutkoskyModel m = CutkoskyModel::create(name.empty() ? "cutkosky" : name, g, *a, *b);
      return m;
    }
    if (kind == "split_ruled") {
      long long d1 = parse_int(head.words[2]), d2 = parse_int(head.words[3]);
      if (name.empty()) name = "split_ruled(" + std::to_string(d1) + "," + std::to_string(d2) + ")";
      return SplitRuledModel{name, d1, d2};
    }
    throw Error(ErrorKind::Parse, "unknown model kind '" + kind + "'");
  }

  MonomialIdealFamily parse_family(std::size_t& i, const std::optional<Model>& self) {
    const Line& head = lines_[i];
    current_line_ = head.number;
    std::optional<int> rank, vars;
    for (std::size_t k = 1; k + 1 < head.words.size(); k += 2) {
      int v = static_cast<int>(parse_int(head.words[k + 1]));
      if (v < 1) throw Error(ErrorKind::Parse, head.words[k] + " must be positive");
      if (head.words[k] == "rank") rank = v;
      else if (head.words[k] == "vars") vars = v;
      else throw Error(ErrorKind::Parse, "unknown family attribute '" + head.words[k] + "'");
    }
    if (head.words.size() % 2 == 0) throw Error(ErrorKind::Parse, "family attributes come in pairs");
    ++i;
    std::optional<MonomialIdealFamily> family;
    bool table = false;
    std::size_t rule_line = head.number;
    std::map<IntVec, std::vector<IntVec>> entries;
    std::optional<RatVec> weight;
    std::optional<std::pair<long long, long long>> box;
    for (; i < lines_.size() && !block_start(lines_[i]); ++i) {
      const Line& l = lines_[i];
      current_line_ = l.number;
      const std::string& key = l.words[0];
      if (key == "rule") {
        if (family || table) throw Error(ErrorKind::Parse, "second rule");
        rule_line = l.number;
        if (l.words.size() >= 2 && l.words[1] == "table") {
          if (l.words.size() != 2) throw Error(ErrorKind::Parse, "rule table takes no arguments");
          if (!rank || !vars) throw Error(ErrorKind::Parse, "rule table needs 'family rank r vars d'");
          table = true;
        } else {
          family = rule_from_words({l.words.begin() + 1, l.words.end()}, rank, vars, self);
        }
      } else if (key == "ideal") {
        if (!table) throw Error(ErrorKind::Parse, "'ideal' outside a table rule");
        if (l.words.size() != 3) throw Error(ErrorKind::Parse, "ideal takes <m> <generators>");
        IntVec m = parse_int_list(l.words[1]);
        if (static_cast<int>(m.size()) != *rank) throw Error(ErrorKind::Parse, "index has wrong rank");
        std::vector<IntVec> gens;
        if (l.words[2] != "zero") {
          for (const auto& g : split(l.words[2], ';')) {
            gens.push_back(parse_int_list(g));
            if (static_cast<int>(gens.back().size()) != *vars) throw Error(ErrorKind::Parse, "generator has wrong length");
          }
        }
        if (!entries.emplace(m, gens).second) throw Error(ErrorKind::Parse, "duplicate ideal index");
      } else if (key == "weight") {
        if (l.words.size() != 2) throw Error(ErrorKind::Parse, "weight takes w1,w2,...");
        RatVec w;
        for (const auto& s : split(l.words[1], ',')) w.push_back(parse_rat(s));
        weight = w;
      } else if (key == "box") {
        if (l.words.size() != 3) throw Error(ErrorKind::Parse, "box takes lo hi");
        box = std::make_pair(parse_int(l.words[1]), parse_int(l.words[2]));
        if (box->first > box->second) throw Error(ErrorKind::Parse, "box lo exceeds hi");
      } else {
        throw Error(ErrorKind::Parse, "unknown directive '" + key + "'");
      }
    }
    current_line_ = rule_line;
    if (table) family = table_family(*rank, *vars, entries);
    if (!family) throw Error(ErrorKind::Parse, "family block without a rule");
    if (weight) {
      if (static_cast<int>(weight->size()) != family->variable_count()) {
        throw Error(ErrorKind::Parse, "weight length does not match vars");
      }
      family->set_weight(*weight);
    }
    if (box) family->set_box(IndexBox::cube(family->rank(), box->first, box->second));
    return *family;
  }
};

}  // namespace

ModelFile parse_model_file(std::string_view text, std::string_view origin) {
  return FileParser(text, origin).run();
}

ModelFile read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_file(ss.str(), path);
}

Model load_model(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    auto file = read_model_file(spec);
    if (!file.model) throw Error(ErrorKind::Config, "'" + spec + "' defines no model");
    return *file.model;
  }
  return preset(spec);
}

MonomialIdealFamily parse_rule(std::string_view rule, std::optional<int> rank, std::optional<int> vars) {
  std::istringstream in{std::string(rule)};
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return rule_from_words(words, rank, vars, std::nullopt);
}

}  // namespace asymvol
