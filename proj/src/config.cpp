#include "liminf/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace liminf {

namespace {

constexpr std::array kTaskNames{"analyze", "enumerate", "dimension", "cantor", "multiplicative"};
constexpr std::array kPlotNames{"count_vs_scale", "bracket_vs_J", "cover_overlay"};

std::string format_error(const std::string& field, int line, const std::string& what) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (!field.empty()) out += "field '" + field + "': ";
  return out + what;
}

}  // namespace

std::string to_string(Task t) { return kTaskNames.at(static_cast<std::size_t>(t)); }

std::optional<Task> parse_task(std::string_view name) {
  for (std::size_t i = 0; i < kTaskNames.size(); ++i) {
    if (name == kTaskNames[i]) return static_cast<Task>(i);
  }
  return std::nullopt;
}

std::string to_string(PlotKind k) { return kPlotNames.at(static_cast<std::size_t>(k)); }

std::optional<PlotKind> parse_plot_kind(std::string_view name) {
  for (std::size_t i = 0; i < kPlotNames.size(); ++i) {
    if (name == kPlotNames[i]) return static_cast<PlotKind>(i);
  }
  return std::nullopt;
}

ConfigError::ConfigError(std::string field, int line, const std::string& what)
    : Error(format_error(field, line, what)), field_(std::move(field)), line_(line), detail_(what) {}

bool ExperimentConfig::has(Task t) const {
  return std::find(tasks.begin(), tasks.end(), t) != tasks.end();
}

LevelParams ExperimentConfig::level_params() const {
  LevelParams p;
  p.tau = tau;
  p.theta = theta.empty() ? std::vector<Rational>(d, Rational(0)) : theta;
  return p;
}

void ExperimentConfig::validate() const {
  if (tau <= 0) throw ConfigError("tau", 0, "tau must be positive");
  if (d < 1) throw ConfigError("d", 0, "d must be >= 1");
  if (!theta.empty() && theta.size() != d) {
    throw ConfigError("theta", 0, "theta has " + std::to_string(theta.size()) + " entries but d = " +
                                      std::to_string(d));
  }
  for (const auto& t : theta) {
    if (t < 0 || t >= 1) throw ConfigError("theta", 0, "theta entries must lie in [0,1)");
  }
  if (depth < 1) throw ConfigError("depth", 0, "depth must be >= 1");
  if (prec < kMinPrecision) throw ConfigError("precision", 0, "precision must be >= 8 bits");
  if (tasks.empty()) throw ConfigError("tasks", 0, "no tasks requested");
  if (has(Task::cantor)) {
    if (holder_s <= 0 || holder_s >= static_cast<unsigned long>(d)) {
      throw ConfigError("cantor.s", 0, "s must satisfy 0 < s < d");
    }
    if (holder_samples < 1) throw ConfigError("cantor.samples", 0, "samples must be >= 1");
  }
  for (const auto k : plots) {
    const Task need = k == PlotKind::count_vs_scale ? Task::enumerate
                      : k == PlotKind::bracket_vs_J ? Task::dimension
                                                    : Task::multiplicative;
    if (!has(need)) {
      throw ConfigError("output.plots", 0, "plot '" + to_string(k) + "' needs the '" + to_string(need) + "' task");
    }
  }
  if (has(Task::multiplicative)) {
    if (cover_s <= 1 || cover_s > 2) throw ConfigError("multiplicative.s", 0, "s must lie in (1, 2]");
    if (cover_K > kMaxCoverExponent) {
      throw ConfigError("multiplicative.K", 0, "K must be <= " + std::to_string(kMaxCoverExponent));
    }
  }
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const YAML::Node& node, const std::string& what) const {
    const int line = node && node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
    throw ConfigError(field, line, what);
  }

  std::string scalar(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(field, node, "expected a scalar");
    return node.Scalar();
  }

  Rational rational(const YAML::Node& node, const std::string& field) const {
    try {
      return parse_rational(scalar(node, field));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(field, node, e.what());
    }
  }

  Integer integer(const YAML::Node& node, const std::string& field) const {
    const Rational r = rational(node, field);
    if (r.get_den() != 1) fail(field, node, "expected an integer");
    return r.get_num();
  }

  unsigned long count(const YAML::Node& node, const std::string& field) const {
    const Integer v = integer(node, field);
    if (v < 0 || !v.fits_ulong_p()) fail(field, node, "expected a non-negative machine integer");
    return v.get_ui();
  }

  bool boolean(const YAML::Node& node, const std::string& field) const {
    try {
      return node.as<bool>();
    } catch (const YAML::Exception&) {
      fail(field, node, "expected true or false");
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

void check_keys(const Reader& r, const YAML::Node& map, const std::string& prefix,
                std::initializer_list<std::string_view> allowed) {
  if (!map.IsMap()) r.fail(prefix, map, "expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.Scalar();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      r.fail(prefix.empty() ? key : prefix + "." + key, kv.first, "unknown key");
    }
  }
}

SequenceSpec read_sequence(const Reader& r, const YAML::Node& node, const YAML::Node& root) {
  check_keys(r, node, "sequence", {"kind", "terms", "q1", "c", "tau", "eta"});
  if (!node["kind"]) r.fail("sequence.kind", node, "missing");
  const std::string kind = r.scalar(node["kind"], "sequence.kind");
  auto need = [&](const char* key) {
    if (!node[key]) r.fail(std::string("sequence.") + key, node, "missing");
    return node[key];
  };
  auto seq_tau = [&]() {
    if (node["tau"]) return r.rational(node["tau"], "sequence.tau");
    if (root["tau"]) return r.rational(root["tau"], "tau");
    r.fail("sequence.tau", node, "missing");
  };
  if (kind == "explicit") {
    const auto terms = need("terms");
    if (!terms.IsSequence()) r.fail("sequence.terms", terms, "expected a list");
    ExplicitSequence s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      s.terms.push_back(r.integer(terms[i], "sequence.terms[" + std::to_string(i) + "]"));
    }
    return s;
  }
  if (kind == "power") {
    return PowerSequence{r.integer(need("q1"), "sequence.q1"), r.rational(need("c"), "sequence.c")};
  }
  if (kind == "contractive" || kind == "remark1_contractive") {
    return ContractiveSequence{r.integer(need("q1"), "sequence.q1"), seq_tau()};
  }
  if (kind == "alternating" || kind == "remark1_alternating") {
    return AlternatingSequence{r.integer(need("q1"), "sequence.q1"), seq_tau(),
                               r.rational(need("eta"), "sequence.eta")};
  }
  r.fail("sequence.kind", node["kind"], "unknown sequence kind '" + kind + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", e.mark.line + 1, e.msg);
  }
  const Reader r(source);
  if (!root || !root.IsMap()) throw ConfigError("", 1, "config must be a mapping");
  check_keys(r, root, "",
             {"name", "sequence", "tau", "theta", "d", "depth", "precision", "budgets", "tasks",
              "cantor", "multiplicative", "output"});

  ExperimentConfig cfg;
  cfg.prec = default_precision();
  if (root["name"]) cfg.name = r.scalar(root["name"], "name");
  if (!root["tau"]) r.fail("tau", root, "missing");
  cfg.tau = r.rational(root["tau"], "tau");
  if (cfg.tau <= 0) r.fail("tau", root["tau"], "tau must be positive");
  if (!root["sequence"]) r.fail("sequence", root, "missing");
  cfg.sequence = read_sequence(r, root["sequence"], root);
  if (root["d"]) {
    cfg.d = r.count(root["d"], "d");
    if (cfg.d < 1) r.fail("d", root["d"], "d must be >= 1");
  }
  if (root["theta"]) {
    const auto th = root["theta"];
    if (!th.IsSequence()) r.fail("theta", th, "expected a list");
    for (std::size_t i = 0; i < th.size(); ++i) {
      const auto v = r.rational(th[i], "theta[" + std::to_string(i) + "]");
      if (v < 0 || v >= 1) r.fail("theta[" + std::to_string(i) + "]", th[i], "theta entries must lie in [0,1)");
      cfg.theta.push_back(v);
    }
    if (cfg.theta.size() != cfg.d) {
      r.fail("theta", th, "theta has " + std::to_string(cfg.theta.size()) + " entries but d = " +
                              std::to_string(cfg.d));
    }
  }
  if (!root["depth"]) r.fail("depth", root, "missing");
  cfg.depth = r.count(root["depth"], "depth");
  if (cfg.depth < 1) r.fail("depth", root["depth"], "depth must be >= 1");
  if (root["precision"]) {
    const auto p = r.count(root["precision"], "precision");
    if (p < kMinPrecision || p > 1u << 20) r.fail("precision", root["precision"], "precision must lie in [8, 2^20]");
    cfg.prec = static_cast<unsigned>(p);
  }
  if (const auto b = root["budgets"]) {
    check_keys(r, b, "budgets", {"components", "nodes"});
    if (b["components"]) cfg.component_budget = r.count(b["components"], "budgets.components");
    if (b["nodes"]) cfg.node_budget = r.count(b["nodes"], "budgets.nodes");
  }
  if (!root["tasks"]) r.fail("tasks", root, "missing");
  const auto tasks = root["tasks"];
  if (!tasks.IsSequence() || tasks.size() == 0) r.fail("tasks", tasks, "expected a non-empty list");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto name = r.scalar(tasks[i], "tasks");
    const auto t = parse_task(name);
    if (!t) r.fail("tasks[" + std::to_string(i) + "]", tasks[i], "unknown task '" + name + "'");
    if (!cfg.has(*t)) cfg.tasks.push_back(*t);
  }
  if (const auto c = root["cantor"]) {
    check_keys(r, c, "cantor", {"s", "samples", "seed"});
    if (c["s"]) cfg.holder_s = r.rational(c["s"], "cantor.s");
    if (c["samples"]) cfg.holder_samples = r.count(c["samples"], "cantor.samples");
    if (c["seed"]) cfg.seed = r.count(c["seed"], "cantor.seed");
  }
  if (const auto m = root["multiplicative"]) {
    check_keys(r, m, "multiplicative", {"K", "s"});
    if (m["K"]) cfg.cover_K = static_cast<unsigned>(r.count(m["K"], "multiplicative.K"));
    if (m["s"]) cfg.cover_s = r.rational(m["s"], "multiplicative.s");
  }
  if (const auto o = root["output"]) {
    check_keys(r, o, "output", {"dir", "format", "canonical", "plots"});
    if (o["dir"]) cfg.out_dir = r.scalar(o["dir"], "output.dir");
    if (o["format"]) {
      const auto f = r.scalar(o["format"], "output.format");
      if (f == "json") {
        cfg.format = Format::json;
      } else if (f == "csv") {
        cfg.format = Format::csv;
      } else {
        r.fail("output.format", o["format"], "expected json or csv");
      }
    }
    if (o["canonical"]) cfg.canonical = r.boolean(o["canonical"], "output.canonical");
    if (const auto pl = o["plots"]) {
      if (!pl.IsSequence()) r.fail("output.plots", pl, "expected a list");
      for (std::size_t i = 0; i < pl.size(); ++i) {
        const auto name = r.scalar(pl[i], "output.plots");
        const auto k = parse_plot_kind(name);
        if (!k) r.fail("output.plots[" + std::to_string(i) + "]", pl[i], "unknown plot '" + name + "'");
        cfg.plots.push_back(*k);
      }
    }
  }

  // Remaining cross-field checks carry the line of the offending section.
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    const auto head = e.field().substr(0, e.field().find('.'));
    const int line = root[head] ? root[head].Mark().line + 1 : 0;
    throw ConfigError(e.field(), line, e.detail());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace liminf
