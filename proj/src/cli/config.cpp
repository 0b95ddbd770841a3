// Copyright 2026 The phasequant Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "pq/metaplectic.hpp"
#include "toml.hpp"

namespace pq::cli {

namespace {

class Reader {
 public:
  explicit Reader(std::filesystem::path source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const toml::node* node, const std::string& where,
                         const std::string& what) const {
    std::ostringstream msg;
    msg << source_.string();
    if (node != nullptr && node->source().begin.line > 0) msg << ":" << node->source().begin.line;
    msg << ": " << where << ": " << what;
    throw ConfigError(msg.str());
  }

  void allow_keys(const toml::table& t, const std::string& where,
                  std::initializer_list<const char*> keys) const {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : t) {
      if (allowed.count(std::string(k.str())) == 0) {
        fail(&v, where + "." + std::string(k.str()), "unknown key");
      }
    }
  }

  double real(const toml::table& t, const char* key, const std::string& where, double fallback) const {
    const toml::node* n = t.get(key);
    if (n == nullptr) return fallback;
    if (auto v = n->value<double>()) return *v;
    fail(n, where + "." + key, "expected a number");
  }

  long long integer(const toml::table& t, const char* key, const std::string& where,
                    long long fallback) const {
    const toml::node* n = t.get(key);
    if (n == nullptr) return fallback;
    if (auto v = n->value<int64_t>(); v && n->is_integer()) return *v;
    fail(n, where + "." + key, "expected an integer");
  }

  std::optional<std::string> text(const toml::table& t, const char* key, const std::string& where) const {
    const toml::node* n = t.get(key);
    if (n == nullptr) return std::nullopt;
    if (auto v = n->value<std::string>()) return *v;
    fail(n, where + "." + key, "expected a string");
  }

  bool boolean(const toml::table& t, const char* key, const std::string& where, bool fallback) const {
    const toml::node* n = t.get(key);
    if (n == nullptr) return fallback;
    if (auto v = n->value<bool>()) return *v;
    fail(n, where + "." + key, "expected true or false");
  }

  std::vector<int> int_list(const toml::table& t, const char* key, const std::string& where,
                            std::vector<int> fallback) const {
    const toml::node* n = t.get(key);
    if (n == nullptr) return fallback;
    const toml::array* arr = n->as_array();
    if (arr == nullptr) fail(n, where + "." + key, "expected an array of integers");
    std::vector<int> out;
    for (const auto& e : *arr) {
      if (!e.is_integer()) fail(&e, where + "." + key, "expected an array of integers");
      out.push_back(static_cast<int>(*e.value<int64_t>()));
    }
    return out;
  }

  std::filesystem::path resolve(const std::string& file) const {
    std::filesystem::path p(file);
    if (p.is_absolute()) return p;
    return source_.parent_path() / p;
  }

 private:
  std::filesystem::path source_;
};

void require_positive(const Reader& r, const toml::table& t, const char* key, const std::string& where,
                      double v) {
  if (!(v > 0.0)) r.fail(t.get(key), where + "." + key, "must be positive");
}

FieldSpec read_field(const Reader& r, const toml::node& node, const std::string& where) {
  const toml::table* t = node.as_table();
  if (t == nullptr) r.fail(&node, where, "expected a table such as { type = \"gaussian\" }");
  r.allow_keys(*t, where,
               {"type", "x0", "p0", "variance", "variance_x", "variance_p", "amplitude", "value",
                "half_x", "half_p", "file", "atoms"});
  FieldSpec f;
  const auto type = r.text(*t, "type", where);
  if (!type) r.fail(&node, where + ".type", "missing");
  f.type = *type;
  f.x0 = r.real(*t, "x0", where, 0.0);
  f.p0 = r.real(*t, "p0", where, 0.0);
  const double var = r.real(*t, "variance", where, 1.0);
  f.variance_x = r.real(*t, "variance_x", where, var);
  f.variance_p = r.real(*t, "variance_p", where, var);
  f.amplitude = r.real(*t, "amplitude", where, 1.0);
  if (f.type == "gaussian") {
    require_positive(r, *t, t->contains("variance_x") ? "variance_x" : "variance", where, f.variance_x);
    require_positive(r, *t, t->contains("variance_p") ? "variance_p" : "variance", where, f.variance_p);
  } else if (f.type == "constant") {
    f.amplitude = r.real(*t, "value", where, f.amplitude);
  } else if (f.type == "indicator") {
    f.half_x = r.real(*t, "half_x", where, 1.0);
    f.half_p = r.real(*t, "half_p", where, 1.0);
    require_positive(r, *t, "half_x", where, f.half_x);
    require_positive(r, *t, "half_p", where, f.half_p);
  } else if (f.type == "samples") {
    const auto file = r.text(*t, "file", where);
    if (!file) r.fail(&node, where + ".file", "missing");
    f.file = r.resolve(*file);
  } else if (f.type == "atoms") {
    const toml::node* an = t->get("atoms");
    const toml::array* arr = an != nullptr ? an->as_array() : nullptr;
    if (arr == nullptr) r.fail(an != nullptr ? an : &node, where + ".atoms", "expected [[x, p, weight], ...]");
    for (size_t i = 0; i < arr->size(); ++i) {
      const toml::array* atom = (*arr)[i].as_array();
      const std::string aw = where + ".atoms[" + std::to_string(i) + "]";
      if (atom == nullptr || atom->size() != 3) r.fail(&(*arr)[i], aw, "expected [x, p, weight]");
      double v[3];
      for (size_t c = 0; c < 3; ++c) {
        const auto x = (*atom)[c].value<double>();
        if (!x) r.fail(&(*atom)[c], aw, "expected numbers");
        v[c] = *x;
      }
      f.atoms.push_back(LatticeAtom{{v[0], v[1]}, v[2]});
    }
    try {
      LatticeMixture{f.atoms}.validate();
    } catch (const std::invalid_argument& e) {
      r.fail(an, where + ".atoms", e.what());
    }
  } else {
    r.fail(t->get("type"), where + ".type",
           "unknown type '" + f.type + "' (gaussian, constant, indicator, samples, atoms)");
  }
  return f;
}

WindowSpec read_window(const Reader& r, const std::string& id, const toml::node& node) {
  const std::string where = "windows." + id;
  const toml::table* t = node.as_table();
  if (t == nullptr) r.fail(&node, where, "expected a table");
  r.allow_keys(*t, where, {"kind", "x0", "p0", "file", "normalize"});
  WindowSpec w;
  w.id = id;
  const auto kind = r.text(*t, "kind", where);
  w.kind = kind.value_or("gaussian");
  w.z0 = {r.real(*t, "x0", where, 0.0), r.real(*t, "p0", where, 0.0)};
  w.normalize = r.boolean(*t, "normalize", where, true);
  if (w.kind == "samples") {
    const auto file = r.text(*t, "file", where);
    if (!file) r.fail(&node, where + ".file", "missing");
    w.file = r.resolve(*file);
  } else if (w.kind != "gaussian" && w.kind != "hermite1" && w.kind != "displaced_gaussian") {
    r.fail(t->get("kind"), where + ".kind",
           "unknown window kind '" + w.kind + "' (gaussian, hermite1, displaced_gaussian, samples)");
  }
  return w;
}

void require_window(const Reader& r, const ExperimentConfig& cfg, const toml::table& t, const char* key,
                    const std::string& where, const std::string& id) {
  if (cfg.windows.count(id) == 0) {
    r.fail(t.get(key), where + "." + key, "undefined window '" + id + "'");
  }
}

TaskSpec read_task(const Reader& r, const ExperimentConfig& cfg, const toml::node& node, size_t index) {
  const std::string where = "tasks[" + std::to_string(index) + "]";
  const toml::table* t = node.as_table();
  if (t == nullptr) r.fail(&node, where, "expected a table");
  TaskSpec task;
  task.where = where;
  const auto kind = r.text(*t, "kind", where);
  if (!kind) r.fail(&node, where + ".kind", "missing");
  task.kind = *kind;
  const auto& kinds = task_kinds();
  if (std::find(kinds.begin(), kinds.end(), task.kind) == kinds.end()) {
    r.fail(t->get("kind"), where + ".kind", "unknown task kind '" + task.kind + "'");
  }
  r.allow_keys(*t, where,
               {"kind", "name", "window", "with", "symbol", "measure", "atoms", "path", "thinning",
                "tol_trace", "tol_psd", "words", "b_scale", "points", "sizes"});
  task.name = r.text(*t, "name", where).value_or(task.kind + "_" + std::to_string(index));
  for (char c : task.name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      r.fail(t->get("name"), where + ".name", "use letters, digits, '_', '-' or '.' only");
    }
  }

  const bool needs_window = task.kind != "quantize" && task.kind != "norms";
  const auto window = r.text(*t, "window", where);
  if (window) {
    require_window(r, cfg, *t, "window", where, *window);
    task.window = *window;
  } else if (needs_window) {
    if (cfg.windows.count("default") == 0) {
      r.fail(&node, where + ".window", "missing (and no window named 'default' is defined)");
    }
    task.window = "default";
  }
  if (const auto other = r.text(*t, "with", where)) {
    require_window(r, cfg, *t, "with", where, *other);
    task.other = *other;
  }

  if (const toml::node* s = t->get("symbol")) task.field = read_field(r, *s, where + ".symbol");
  if (const toml::node* m = t->get("measure")) task.field = read_field(r, *m, where + ".measure");
  if (const toml::node* a = t->get("atoms")) {
    toml::table wrapped;
    wrapped.insert("type", "atoms");
    wrapped.insert("atoms", *a->as_array());
    if (a->as_array() == nullptr) r.fail(a, where + ".atoms", "expected [[x, p, weight], ...]");
    task.field = read_field(r, wrapped, where + ".atoms");
  }
  const bool needs_field = task.kind == "quantize" || task.kind == "toeplitz" ||
                           task.kind == "density" || task.kind == "lattice" || task.kind == "covariance";
  if (needs_field && !task.field) {
    const char* key = task.kind == "density" ? "measure" : task.kind == "lattice" ? "atoms" : "symbol";
    r.fail(&node, where + "." + key, "missing");
  }
  if (task.kind == "lattice" && task.field->type != "atoms") {
    r.fail(&node, where + ".atoms", "lattice tasks take an atoms list");
  }
  if (task.kind == "norms" && !task.field && task.other.empty()) {
    r.fail(&node, where, "norms needs a symbol/measure or a 'with' window");
  }

  task.path = r.text(*t, "path", where).value_or(task.kind == "toeplitz" ? "both" : "conv");
  if (task.path != "conv" && task.path != "direct" && task.path != "both") {
    r.fail(t->get("path"), where + ".path", "expected conv, direct or both");
  }
  if (task.path == "both" && task.kind != "toeplitz") {
    r.fail(t->get("path"), where + ".path", "'both' is only meaningful for toeplitz tasks");
  }
  task.thinning = static_cast<int>(r.integer(*t, "thinning", where, 0));
  if (task.thinning < 0) r.fail(t->get("thinning"), where + ".thinning", "must be >= 0");
  task.tol_trace = r.real(*t, "tol_trace", where, task.tol_trace);
  task.tol_psd = r.real(*t, "tol_psd", where, task.tol_psd);
  require_positive(r, *t, "tol_trace", where, task.tol_trace);
  require_positive(r, *t, "tol_psd", where, task.tol_psd);
  task.b_scale = r.real(*t, "b_scale", where, 1.0);
  require_positive(r, *t, "b_scale", where, task.b_scale);
  task.points = r.int_list(*t, "points", where, task.points);
  for (int p : task.points) {
    if (p < 8) r.fail(t->get("points"), where + ".points", "need at least 8 points per axis");
  }
  task.sizes = r.int_list(*t, "sizes", where, task.sizes);
  for (int s : task.sizes) {
    if (s < 8 || s % 2 != 0) r.fail(t->get("sizes"), where + ".sizes", "sizes must be even and >= 8");
  }

  if (const toml::node* w = t->get("words")) {
    const toml::array* arr = w->as_array();
    if (arr == nullptr) r.fail(w, where + ".words", "expected an array of words");
    for (size_t i = 0; i < arr->size(); ++i) {
      const std::string ww = where + ".words[" + std::to_string(i) + "]";
      std::vector<std::string> word;
      const toml::node& item = (*arr)[i];
      if (const auto single = item.value<std::string>()) {
        if (!single->empty()) word.push_back(*single);
      } else if (const toml::array* list = item.as_array()) {
        for (const auto& g : *list) {
          const auto s = g.value<std::string>();
          if (!s) r.fail(&g, ww, "generators are strings like \"chirp:0.5\"");
          word.push_back(*s);
        }
      } else {
        r.fail(&item, ww, "expected a string or an array of strings");
      }
      for (const auto& g : word) {
        try {
          parse_generator(g);
        } catch (const std::invalid_argument& e) {
          r.fail(&item, ww, e.what());
        }
      }
      task.words.push_back(std::move(word));
    }
  } else if (task.kind == "covariance") {
    r.fail(&node, where + ".words", "missing");
  }
  return task;
}

}  // namespace

const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> kinds{"wigner",     "quantize", "toeplitz", "density",
                                              "lattice",    "covariance", "norms",  "bench"};
  return kinds;
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& source) {
  toml::table root;
  try {
    root = toml::parse(text, source.string());
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source.string() << ":" << e.source().begin.line << ": " << e.description();
    throw ConfigError(msg.str());
  }
  const Reader r(source);
  r.allow_keys(root, "config", {"output_dir", "grid", "windows", "tasks"});

  ExperimentConfig cfg;
  cfg.source = source;
  if (const auto out = r.text(root, "output_dir", "config")) cfg.output_dir = r.resolve(*out);

  if (const toml::node* g = root.get("grid")) {
    const toml::table* t = g->as_table();
    if (t == nullptr) r.fail(g, "grid", "expected a table");
    r.allow_keys(*t, "grid", {"n_points", "half_width", "hbar"});
    cfg.n_points = static_cast<int>(r.integer(*t, "n_points", "grid", cfg.n_points));
    cfg.half_width = r.real(*t, "half_width", "grid", cfg.half_width);
    cfg.hbar = r.real(*t, "hbar", "grid", cfg.hbar);
    try {
      make_grid(cfg.n_points, cfg.half_width, cfg.hbar);
    } catch (const std::invalid_argument& e) {
      r.fail(g, "grid", e.what());
    }
  }

  if (const toml::node* w = root.get("windows")) {
    const toml::table* t = w->as_table();
    if (t == nullptr) r.fail(w, "windows", "expected a table of windows");
    for (const auto& [k, v] : *t) {
      const std::string id(k.str());
      cfg.windows.emplace(id, read_window(r, id, v));
    }
  }

  if (const toml::node* tn = root.get("tasks")) {
    const toml::array* arr = tn->as_array();
    if (arr == nullptr) r.fail(tn, "tasks", "expected [[tasks]] entries");
    std::set<std::string> names;
    for (size_t i = 0; i < arr->size(); ++i) {
      TaskSpec task = read_task(r, cfg, (*arr)[i], i);
      if (!names.insert(task.name).second) {
        r.fail(&(*arr)[i], task.where + ".name", "duplicate task name '" + task.name + "'");
      }
      cfg.tasks.push_back(std::move(task));
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace pq::cli
