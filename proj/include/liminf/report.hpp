#pragma once

// Typed experiment reports with exact JSON round-tripping. Dyadic bounds are
// written as "m*2^e" strings, big integers and rationals as decimal strings.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liminf/config.hpp"
#include "liminf/multiplicative.hpp"
#include "liminf/numerics.hpp"

namespace liminf {

struct ConfigEcho {
  std::string name;
  std::string sequence;
  Rational tau;
  std::vector<Rational> theta;
  std::size_t d = 1;
  std::size_t depth = 1;
  unsigned prec = kDefaultPrecision;
  std::vector<std::string> tasks;
  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct AnalyzeSection {
  std::vector<Integer> terms;
  std::vector<Enclosure> h_list;
  std::vector<Enclosure> alpha_list;
  std::optional<Enclosure> h_prefix;
  std::optional<Enclosure> alpha_last;
  std::string regime;  // pass | fail | indeterminate
  std::size_t regime_index = 0;
  friend bool operator==(const AnalyzeSection&, const AnalyzeSection&) = default;
};

struct LevelRow {
  std::size_t level = 0;
  Integer count_min;
  Integer count_max;
  Rational max_len;
  Rational min_gap;
  friend bool operator==(const LevelRow&, const LevelRow&) = default;
};

struct EnumerateSection {
  std::vector<Integer> q;  // q_j per row, for scale axes
  std::vector<LevelRow> levels;
  friend bool operator==(const EnumerateSection&, const EnumerateSection&) = default;
};

struct DimensionRow {
  std::size_t J = 0;
  Integer N_min;
  Integer N_max;
  Enclosure side;
  Enclosure upper;
  std::optional<Integer> M;
  std::optional<Enclosure> lower;
  std::optional<Enclosure> theory;  // formula with alpha_J
  bool regime_ok = true;
  friend bool operator==(const DimensionRow&, const DimensionRow&) = default;
};

struct DimensionSection {
  std::vector<DimensionRow> rows;
  std::optional<Enclosure> theoretical;  // formula with alpha_last
  bool clamped = false;
  friend bool operator==(const DimensionSection&, const DimensionSection&) = default;
};

struct CantorSection {
  std::size_t depth = 0;
  std::vector<Integer> branching;  // b_k
  std::size_t explicit_depth = 0;
  std::vector<Rational> min_separation;  // exhaustive, k <= explicit depth
  Rational s;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Enclosure max_ratio;
  std::vector<Rational> worst_center;
  Enclosure worst_radius;
  friend bool operator==(const CantorSection&, const CantorSection&) = default;
};

struct MultiplicativeSection {
  Enclosure lower;
  Enclosure upper;
  bool clamped = false;
  Rational critical_s;
  unsigned K = 0;
  Rational s;
  Enclosure s_cost;
  std::vector<Square> squares;  // units of 2^{-K}
  friend bool operator==(const MultiplicativeSection&, const MultiplicativeSection&) = default;
};

struct Report {
  int version = 1;
  std::string status = "ok";  // ok | budget_exhausted
  ConfigEcho config;
  std::optional<AnalyzeSection> analyze;
  std::optional<EnumerateSection> enumerate;
  std::optional<DimensionSection> dimension;
  std::optional<CantorSection> cantor;
  std::optional<MultiplicativeSection> multiplicative;
  std::vector<std::string> warnings;
  std::optional<std::map<std::string, double>> timing_ms;
  friend bool operator==(const Report&, const Report&) = default;
};

std::string report_to_json(const Report& r, int indent = 2);
Report report_from_json(const std::string& text);

/// CSV tables; empty string when the section is absent.
std::string levels_csv(const Report& r);
std::string dimension_csv(const Report& r);
std::string cover_csv(const Report& r);

}  // namespace liminf
