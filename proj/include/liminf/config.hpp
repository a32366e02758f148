#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liminf/level_sets.hpp"
#include "liminf/multiplicative.hpp"
#include "liminf/numerics.hpp"
#include "liminf/sequences.hpp"

namespace liminf {

enum class Task { analyze, enumerate, dimension, cantor, multiplicative };
enum class Format { json, csv };
enum class PlotKind { count_vs_scale, bracket_vs_J, cover_overlay };

std::string to_string(Task t);
std::optional<Task> parse_task(std::string_view name);
std::string to_string(PlotKind k);
std::optional<PlotKind> parse_plot_kind(std::string_view name);

/// Invalid configuration; `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, int line, const std::string& what);
  const std::string& field() const { return field_; }
  int line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string field_;
  int line_;
  std::string detail_;
};

struct ExperimentConfig {
  std::string name = "experiment";
  SequenceSpec sequence = ExplicitSequence{};
  Rational tau;
  std::vector<Rational> theta;
  std::size_t d = 1;
  std::size_t depth = 1;
  unsigned prec = kDefaultPrecision;
  std::size_t component_budget = kDefaultComponentBudget;
  std::size_t node_budget = 1'000'000;
  std::vector<Task> tasks;

  Rational holder_s{3, 10};
  std::size_t holder_samples = 1000;
  std::uint64_t seed = 1;

  unsigned cover_K = 6;
  Rational cover_s{3, 2};

  std::string out_dir = ".";
  Format format = Format::json;
  bool canonical = false;
  std::vector<PlotKind> plots;

  bool has(Task t) const;
  LevelParams level_params() const;
  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

/// Parses YAML text; `source` names the origin in diagnostics.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

}  // namespace liminf
