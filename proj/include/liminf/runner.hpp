#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liminf/config.hpp"
#include "liminf/report.hpp"

namespace liminf {

/// Command-line overrides applied on top of a loaded config.
struct RunOverrides {
  std::vector<Task> tasks;
  std::optional<std::size_t> depth;
  std::optional<unsigned> prec;
  std::optional<std::string> out_dir;
  std::optional<Format> format;
  bool canonical = false;
  std::optional<std::uint64_t> seed;
  std::vector<PlotKind> plots;
};

void apply_overrides(ExperimentConfig& cfg, const RunOverrides& o);

enum ExitCode : int { kExitOk = 0, kExitBudget = 1, kExitConfig = 2 };

struct RunResult {
  Report report;
  int exit_code = kExitOk;
};

/// Runs the requested tasks in dependency order. Budget exhaustion in one
/// task is recorded and the rest still run (exit code 1).
RunResult run(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

/// Writes report files and plots under cfg.out_dir; returns the paths written.
std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const Report& report);

}  // namespace liminf
