#include "liminf/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "liminf/cantor_measure.hpp"
#include "liminf/dimension_bounds.hpp"
#include "liminf/level_sets.hpp"
#include "liminf/multiplicative.hpp"
#include "liminf/plot.hpp"
#include "liminf/sequences.hpp"

namespace liminf {

void apply_overrides(ExperimentConfig& cfg, const RunOverrides& o) {
  if (!o.tasks.empty()) cfg.tasks = o.tasks;
  if (o.depth) cfg.depth = *o.depth;
  if (o.prec) cfg.prec = *o.prec;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.format) cfg.format = *o.format;
  if (o.canonical) cfg.canonical = true;
  if (o.seed) cfg.seed = *o.seed;
  for (const auto k : o.plots) cfg.plots.push_back(k);
  cfg.validate();
}

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  Timer(Report& r, bool enabled, std::string key)
      : report_(r), enabled_(enabled), key_(std::move(key)), start_(Clock::now()) {}
  ~Timer() {
    if (!enabled_) return;
    const std::chrono::duration<double, std::milli> dt = Clock::now() - start_;
    (*report_.timing_ms)[key_] = dt.count();
  }

 private:
  Report& report_;
  bool enabled_;
  std::string key_;
  Clock::time_point start_;
};

ConfigEcho echo(const ExperimentConfig& cfg) {
  ConfigEcho e;
  e.name = cfg.name;
  e.sequence = describe(cfg.sequence);
  e.tau = cfg.tau;
  e.theta = cfg.level_params().theta;
  e.d = cfg.d;
  e.depth = cfg.depth;
  e.prec = cfg.prec;
  for (const auto t : cfg.tasks) e.tasks.push_back(to_string(t));
  return e;
}

AnalyzeSection analyze(const QSequence& qs, const ExponentStats& st, const RegimeCheck& rc) {
  AnalyzeSection a;
  a.terms.assign(qs.terms().begin(), qs.terms().end());
  a.h_list = st.h_list;
  a.alpha_list = st.alpha_list;
  a.h_prefix = st.h_prefix;
  a.alpha_last = st.alpha_last;
  a.regime = to_string(rc.status);
  a.regime_index = rc.index;
  return a;
}

EnumerateSection enumerate(const ExperimentConfig& cfg, const QSequence& qs, Exec exec) {
  const auto prod =
      prefix_intersection_product(qs, cfg.level_params(), cfg.depth, cfg.prec, cfg.component_budget, exec);
  EnumerateSection e;
  for (const auto& l : prod.levels) {
    e.q.push_back(qs.q(l.level));
    e.levels.push_back({l.level, l.boxes.min, l.boxes.max, l.max_side, l.min_gap});
  }
  return e;
}

DimensionSection dimension(const ExperimentConfig& cfg, const QSequence& qs, const ExponentStats& st,
                           Report& report) {
  DimensionSection sec;
  bool warned = false;
  for (std::size_t J = 1; J <= cfg.depth; ++J) {
    const CoverReport cover = upper_cover_count(qs, cfg.tau, cfg.d, J, cfg.prec);
    DimensionRow row;
    row.J = J;
    row.N_min = cover.N.min;
    row.N_max = cover.N.max;
    row.side = cover.side;
    row.upper = cover.dim_estimate;
    row.regime_ok = cover.regime_ok;
    try {
      const CantorCount low = lower_cantor_count(qs, cfg.tau, cfg.d, J, cfg.prec);
      row.M = low.M;
      row.lower = low.s_hat;
    } catch (const RegimeViolation& e) {
      if (!warned) report.warnings.push_back(std::string("dimension: ") + e.what());
      warned = true;
    }
    if (J >= 2) {
      const auto th = theoretical_dimension(cfg.tau, st.alpha_list[J - 2], cfg.d);
      row.theory = th.value;
    }
    sec.rows.push_back(std::move(row));
  }
  if (st.alpha_last) {
    const auto th = theoretical_dimension(cfg.tau, *st.alpha_last, cfg.d);
    sec.theoretical = th.value;
    sec.clamped = th.clamped;
    if (th.clamped) report.warnings.push_back("dimension: tau * alpha may exceed 1; formula clamped at 0");
  }
  return sec;
}

CantorSection cantor(const ExperimentConfig& cfg, const QSequence& qs, Exec exec) {
  const CantorTree tree = build_tree(qs, cfg.level_params(), cfg.depth, cfg.prec, cfg.node_budget, exec);
  CantorSection c;
  c.depth = cfg.depth;
  for (std::size_t k = 1; k <= cfg.depth; ++k) c.branching.push_back(tree.branching(k));
  c.explicit_depth = tree.explicit_depth();
  for (std::size_t k = 1; k <= tree.explicit_depth(); ++k) c.min_separation.push_back(min_separation(tree, k));
  const auto cert = holder_certificate(tree, cfg.holder_s, cfg.holder_samples, cfg.seed, exec);
  c.s = cert.s;
  c.n = cert.n;
  c.seed = cert.seed;
  c.max_ratio = cert.max_ratio;
  c.worst_center = cert.worst_ball.center;
  c.worst_radius = cert.worst_ball.radius;
  return c;
}

MultiplicativeSection multiplicative(const ExperimentConfig& cfg, const ExponentStats& st, Report& report) {
  Enclosure alpha = Enclosure::exact(Integer(0), cfg.prec);
  if (st.alpha_last) {
    alpha = *st.alpha_last;
  } else {
    report.warnings.push_back("multiplicative: no alpha at depth 1; using alpha = 0");
  }
  const MultBounds b = mult_bounds(cfg.tau, alpha, cfg.d);
  const HyperbolicCover hc = hyperbolic_cover(cfg.cover_K, cfg.cover_s, cfg.prec);
  MultiplicativeSection m;
  m.lower = b.lower;
  m.upper = b.upper;
  m.clamped = b.clamped;
  m.critical_s = Rational(static_cast<unsigned long>(cfg.d - 1)) + 1 / (cfg.tau + 1);
  m.K = cfg.cover_K;
  m.s = cfg.cover_s;
  m.s_cost = hc.s_cost;
  m.squares = hc.cover.squares;
  return m;
}

}  // namespace

RunResult run(const ExperimentConfig& cfg, Exec exec) {
  cfg.validate();
  RunResult result;
  Report& report = result.report;
  report.config = echo(cfg);
  const bool timed = !cfg.canonical;
  if (timed) report.timing_ms.emplace();

  QSequence qs;
  try {
    qs = generate(cfg.sequence, cfg.depth);
  } catch (const SequenceError& e) {
    throw ConfigError("sequence", 0, e.what());
  }
  ExponentStats stats;
  {
    Timer t(report, timed, "analyze");
    stats = exponent_stats(qs, cfg.prec);
    const RegimeCheck rc = validate_regime(qs, cfg.tau, cfg.prec);
    if (rc.status != RegimeStatus::pass) {
      report.warnings.push_back("analyze: regime h > tau + 1 is " + to_string(rc.status) + " at j = " +
                                std::to_string(rc.index));
    }
    if (cfg.has(Task::analyze)) report.analyze = analyze(qs, stats, rc);
  }

  auto guarded = [&](Task task, auto&& body) {
    if (!cfg.has(task)) return;
    Timer t(report, timed, to_string(task));
    try {
      body();
    } catch (const BudgetExceeded& e) {
      report.status = "budget_exhausted";
      report.warnings.push_back(to_string(task) + ": budget exhausted at level " + std::to_string(e.level()) +
                                ": " + e.what());
      result.exit_code = kExitBudget;
    } catch (const RegimeViolation& e) {
      report.warnings.push_back(to_string(task) + ": " + e.what());
    }
  };

  guarded(Task::enumerate, [&] { report.enumerate = enumerate(cfg, qs, exec); });
  guarded(Task::dimension, [&] { report.dimension = dimension(cfg, qs, stats, report); });
  guarded(Task::cantor, [&] { report.cantor = cantor(cfg, qs, exec); });
  guarded(Task::multiplicative, [&] { report.multiplicative = multiplicative(cfg, stats, report); });
  return result;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const Report& report) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    if (text.empty()) return;
    write_file(dir / name, text);
    written.push_back((dir / name).string());
  };
  if (cfg.format == Format::json) {
    emit("report.json", report_to_json(report));
  } else {
    emit("levels.csv", levels_csv(report));
    emit("dimension.csv", dimension_csv(report));
    emit("cover.csv", cover_csv(report));
  }
  for (const auto k : cfg.plots) {
    try {
      emit(to_string(k) + ".svg", render_svg(report, k));
    } catch (const MissingSeries&) {
      // the producing task ran out of budget; the warning is already recorded
    }
  }
  return written;
}

}  // namespace liminf
