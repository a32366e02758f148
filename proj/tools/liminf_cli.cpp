#include <cstdint>
#include <iostream>

#include <CLI11.hpp>

#include "liminf/config.hpp"
#include "liminf/plot.hpp"
#include "liminf/report.hpp"
#include "liminf/runner.hpp"

using namespace liminf;

namespace {

int do_run(const std::string& config_path, const RunOverrides& overrides,
           const std::vector<std::string>& task_names, const std::vector<std::string>& plot_names,
           const std::string& format) {
  RunOverrides o = overrides;
  for (const auto& name : task_names) {
    const auto t = parse_task(name);
    if (!t) throw ConfigError("--task", 0, "unknown task '" + name + "'");
    o.tasks.push_back(*t);
  }
  for (const auto& name : plot_names) {
    const auto k = parse_plot_kind(name);
    if (!k) throw ConfigError("--plot", 0, "unknown plot '" + name + "'");
    o.plots.push_back(*k);
  }
  if (!format.empty()) o.format = format == "csv" ? Format::csv : Format::json;

  ExperimentConfig cfg = load_config(config_path);
  apply_overrides(cfg, o);
  const RunResult result = run(cfg);
  for (const auto& w : result.report.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& path : write_outputs(cfg, result.report)) std::cout << path << '\n';
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified estimators for exponentially shrinking liminf sets"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run the tasks of a YAML experiment config");
  std::string config_path;
  RunOverrides overrides;
  std::vector<std::string> task_names;
  std::vector<std::string> plot_names;
  std::string format;
  std::size_t depth = 0;
  unsigned prec = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
  run_cmd->add_option("config", config_path, "experiment config (YAML)")->required();
  run_cmd->add_option("--task", task_names, "restrict to these tasks (repeatable)");
  run_cmd->add_option("--depth", depth, "override the depth J");
  run_cmd->add_option("--prec", prec, "working precision in bits");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  run_cmd->add_flag("--canonical", overrides.canonical, "omit timing so reports are byte-reproducible");
  run_cmd->add_option("--seed", seed, "seed for sampled certificates");
  run_cmd->add_option("--plot", plot_names, "also write an SVG plot (repeatable)");

  auto* plot_cmd = app.add_subcommand("plot", "render an SVG plot from a JSON report");
  std::string report_path;
  std::string kind_name;
  std::string svg_path;
  plot_cmd->add_option("report", report_path, "report.json written by run")->required();
  plot_cmd->add_option("--kind", kind_name, "count_vs_scale | bracket_vs_J | cover_overlay")->required();
  plot_cmd->add_option("--out", svg_path, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run_cmd->parsed()) {
      if (run_cmd->count("--depth")) overrides.depth = depth;
      if (run_cmd->count("--prec")) overrides.prec = prec;
      if (run_cmd->count("--seed")) overrides.seed = seed;
      if (run_cmd->count("--out")) overrides.out_dir = out_dir;
      return do_run(config_path, overrides, task_names, plot_names, format);
    }
    const auto kind = parse_plot_kind(kind_name);
    if (!kind) throw ConfigError("--kind", 0, "unknown plot '" + kind_name + "'");
    std::ifstream in(report_path);
    if (!in) throw ConfigError("report", 0, "cannot open '" + report_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    write_plot(report_from_json(buf.str()), *kind, svg_path);
    std::cout << svg_path << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << (config_path.empty() ? "" : config_path + ": ") << e.what() << '\n';
    return kExitConfig;
  } catch (const MissingSeries& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  }
}
