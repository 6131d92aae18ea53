#include "weylkit/specfile.hpp"

#include <fstream>
#include <sstream>

namespace weylkit {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& path, int line, int col, const std::string& msg) {
  throw SpecParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                       msg);
}

Expression parse_expr_at(const std::string& path, int line, int col_base,
                         const std::string& text) {
  try {
    return Expression::parse(text);
  } catch (const ParseError& e) {
    fail(path, line, col_base + static_cast<int>(e.offset), e.what());
  }
}

struct Entry {
  std::string rhs;
  int line = 0, col = 0;  // position of the expression text
};

}  // namespace

LoadedSpec parse_spec_text(const std::string& text, const std::string& path) {
  std::map<std::string, std::pair<std::string, int>> meta;  // key -> (value, line)
  std::vector<std::string> coords;
  std::map<std::string, double> params;
  std::map<std::pair<int, int>, Entry> metric_entries;
  std::map<int, Entry> embedding_entries;
  std::map<int, std::pair<double, double>> ranges;
  bool saw_coords = false, saw_metric = false, saw_embedding = false;

  std::string section;
  int section_line = 0;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (size_t h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    const int col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    if (line.front() == '[') {
      if (line.back() != ']') fail(path, lineno, col, "malformed section header");
      section = line.substr(1, line.size() - 2);
      section_line = lineno;
      if (section == "coords") saw_coords = true;
      else if (section == "metric") saw_metric = true;
      else if (section == "embedding") saw_embedding = true;
      else if (section != "meta" && section != "params" && section != "ranges")
        fail(path, lineno, col, "unknown section [" + section + "]");
      continue;
    }
    if (section.empty()) fail(path, lineno, col, "content before any section header");

    if (section == "meta") {
      size_t eq = line.find('=');
      if (eq == std::string::npos) fail(path, lineno, col, "expected key = value");
      std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
      if (meta.count(k)) fail(path, lineno, col, "duplicate meta key '" + k + "'");
      meta[k] = {v, lineno};
    } else if (section == "coords") {
      std::istringstream ls(line);
      std::string w;
      while (ls >> w) coords.push_back(w);
    } else if (section == "params") {
      size_t eq = line.find('=');
      if (eq == std::string::npos) fail(path, lineno, col, "expected key = value");
      std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
      if (params.count(k)) fail(path, lineno, col, "duplicate parameter '" + k + "'");
      try {
        size_t used = 0;
        params[k] = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        fail(path, lineno, col, "parameter '" + k + "' is not a number: '" + v + "'");
      }
    } else if (section == "metric" || section == "embedding") {
      std::istringstream ls(line);
      std::string head;
      ls >> head;
      const bool is_metric = (section == "metric");
      if (head != (is_metric ? "g" : "X"))
        fail(path, lineno, col,
             is_metric ? "metric lines must read 'g i j = <expr>'"
                       : "embedding lines must read 'X mu = <expr>'");
      int i = -1, j = -1;
      if (is_metric) {
        if (!(ls >> i >> j)) fail(path, lineno, col, "expected two integer indices");
      } else {
        if (!(ls >> i)) fail(path, lineno, col, "expected one integer index");
      }
      std::string rest;
      std::getline(ls, rest);
      size_t eq = rest.find('=');
      if (eq == std::string::npos) fail(path, lineno, col, "expected '=' before expression");
      std::string rhs = trim(rest.substr(eq + 1));
      if (rhs.empty()) fail(path, lineno, col, "empty expression");
      const int ecol = static_cast<int>(raw.find(rhs)) + 1;
      if (is_metric) {
        if (metric_entries.count({i, j}))
          fail(path, lineno, col,
               "duplicate metric entry g " + std::to_string(i) + " " + std::to_string(j));
        metric_entries[{i, j}] = {rhs, lineno, ecol};
      } else {
        if (embedding_entries.count(i))
          fail(path, lineno, col, "duplicate embedding entry X " + std::to_string(i));
        embedding_entries[i] = {rhs, lineno, ecol};
      }
    } else if (section == "ranges") {
      std::istringstream ls(line);
      int i;
      std::string eq;
      double lo, hi;
      if (!(ls >> i >> eq >> lo >> hi) || eq != "=")
        fail(path, lineno, col, "range lines must read 'i = lo hi'");
      ranges[i] = {lo, hi};
    }
  }

  if (!saw_coords) fail(path, std::max(section_line, 1), 1, "missing section [coords]");
  if (saw_metric == saw_embedding)
    fail(path, std::max(section_line, 1), 1,
         saw_metric ? "file has both [metric] and [embedding] sections"
                    : "missing section: need [metric] or [embedding]");

  int dim = static_cast<int>(coords.size());
  if (auto it = meta.find("dim"); it != meta.end()) {
    int d = 0;
    try {
      d = std::stoi(it->second.first);
    } catch (const std::exception&) {
      fail(path, it->second.second, 1, "meta dim is not an integer");
    }
    if (d != dim)
      fail(path, it->second.second, 1,
           "meta dim = " + std::to_string(d) + " but [coords] lists " + std::to_string(dim));
  }
  if (dim < 2) fail(path, 1, 1, "need at least 2 coordinates");

  std::string name = meta.count("name") ? meta["name"].first : "unnamed";
  std::pair<int, int> sig{0, 0};
  bool have_sig = false;
  if (auto it = meta.find("signature"); it != meta.end()) {
    std::istringstream ss(it->second.first);
    if (!(ss >> sig.first >> sig.second))
      fail(path, it->second.second, 1, "signature must be 'n_plus n_minus'");
    have_sig = true;
  }

  std::vector<std::pair<double, double>> sample_ranges(dim, {-1.0, 1.0});
  for (const auto& [i, r] : ranges) {
    if (i < 0 || i >= dim) fail(path, 1, 1, "range index out of bounds: " + std::to_string(i));
    sample_ranges[i] = r;
  }

  if (saw_metric) {
    MetricSpec s;
    s.name = name;
    s.dim = dim;
    s.coords = coords;
    s.params = params;
    s.expected_signature = have_sig ? sig : std::pair<int, int>{0, 0};
    s.sample_ranges = sample_ranges;
    s.g.assign(dim * dim, Expression::number(0.0));
    std::vector<std::vector<const Entry*>> given(dim, std::vector<const Entry*>(dim, nullptr));
    for (const auto& [ij, e] : metric_entries) {
      auto [i, j] = ij;
      if (i < 0 || i >= dim || j < 0 || j >= dim)
        fail(path, e.line, 1, "metric index out of bounds");
      given[i][j] = &e;
    }
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        const Entry* a = given[i][j];
        const Entry* b = (i == j) ? nullptr : given[j][i];
        if (a && b && trim(a->rhs) != trim(b->rhs))
          fail(path, b->line, b->col,
               "conflicting symmetric entries g " + std::to_string(i) + " " +
                   std::to_string(j) + " and g " + std::to_string(j) + " " + std::to_string(i));
        const Entry* e = a ? a : b;
        if (!e) continue;
        Expression ex = parse_expr_at(path, e->line, e->col, e->rhs);
        s.g[i * dim + j] = ex;
        s.g[j * dim + i] = ex;
      }
    return s;
  }

  EmbeddingSpec e;
  e.name = name;
  e.ambient_dim = dim + 1;
  e.surface_coords = coords;
  e.params = params;
  e.sample_ranges = sample_ranges;
  if (!have_sig) sig = {dim + 1, 0};  // Euclidean ambient by default
  if (sig.first + sig.second != dim + 1)
    fail(path, 1, 1, "ambient signature must have n_plus + n_minus = dim + 1");
  for (int i = 0; i < sig.second; ++i) e.ambient_eta.push_back(-1.0);
  for (int i = 0; i < sig.first; ++i) e.ambient_eta.push_back(1.0);
  e.maps.assign(dim + 1, Expression::number(0.0));
  std::vector<bool> have(dim + 1, false);
  for (const auto& [mu, en] : embedding_entries) {
    if (mu < 0 || mu > dim) fail(path, en.line, 1, "embedding index out of bounds");
    e.maps[mu] = parse_expr_at(path, en.line, en.col, en.rhs);
    have[mu] = true;
  }
  for (int mu = 0; mu <= dim; ++mu)
    if (!have[mu]) fail(path, 1, 1, "missing embedding entry X " + std::to_string(mu));
  return e;
}

LoadedSpec load_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SpecParseError(path + ":1:1: cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_spec_text(ss.str(), path);
}

}  // namespace weylkit
