// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "liminf/cantor_measure.hpp"
#include "liminf/dimension_bounds.hpp"
#include "liminf/level_sets.hpp"
#include "liminf/multiplicative.hpp"
#include "liminf/runner.hpp"
#include "liminf/sequences.hpp"

using namespace liminf;

namespace {

// Pinned tolerances.
const Rational kUpperSlack(1, 100);       // AC1: upper estimate within 0.01 above 1/3
const Rational kLowerSlack(2, 10000);     // AC1: lower estimate within 0.0002 of 1/3
constexpr double kAc1Seconds = 5.0;
constexpr double kAc2Seconds = 1.0;
constexpr long kAc2CountMin = 48, kAc2CountMax = 60;
constexpr int kAc3Cases = 1000;
constexpr long kAc3MaxQ = 10'000;
constexpr std::size_t kAc7Samples = 1000;
const Rational kAc7HolderBound(16);
constexpr int kAc8Points = 10'000;
constexpr double kAc8Band = 16.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

QSequence seq(std::initializer_list<long> xs) {
  std::vector<Integer> v;
  for (long x : xs) v.emplace_back(x);
  return QSequence(v);
}

Rational lo_of(const Enclosure& e) { return e.lo().to_rational(); }
Rational hi_of(const Enclosure& e) { return e.hi().to_rational(); }

void ac1(Outcome& o) {
  const auto t0 = Clock::now();
  const auto qs = generate(PowerSequence{Integer(4), Rational(4)}, 6);
  const auto up = upper_dim_estimate(qs, Rational(1), 1, 6);
  const auto low = lower_cantor_count(qs, Rational(1), 1, 6).s_hat;
  const auto st = exponent_stats(qs, kDefaultPrecision);
  const auto th6 = theoretical_dimension(Rational(1), st.alpha_list.back(), 1).value;
  const double dt = seconds_since(t0);
  const Rational third(1, 3);
  o.require(lo_of(up) >= third && hi_of(up) <= third + kUpperSlack, "upper estimate in [1/3, 1/3 + 0.01]");
  o.require(low.is_exact() && lo_of(low) == Rational(683, 2048), "lower estimate = 683/2048");
  o.require(abs(lo_of(low) - third) <= kLowerSlack, "|lower - 1/3| <= 0.0002");
  o.require(compare(low, th6) != Order::greater && compare(up, th6) != Order::less,
            "lower <= formula(alpha_6) <= upper");
  o.require(dt < kAc1Seconds, "runtime < 5 s");
  o.detail << "upper in [" << up.lo().to_decimal(8) << ", " << up.hi().to_decimal(8) << "], lower = "
           << to_string(lo_of(low)) << " (1/3 " << (lo_of(low) >= third ? "+ " : "- ")
           << to_string(abs(lo_of(low) - third)) << "), " << dt << " s";
}

// Components of E_1 ∩ E_2 scanned from the level-2 side: each of the q2 arcs
// is clipped against every lift of every level-1 arc.
long brute_force_components(long q1, long q2, const Rational& r1, const Rational& r2) {
  long count = 0;
  for (long p2 = 0; p2 < q2; ++p2) {
    const Rational a2 = Rational(p2, q2) - r2;
    const Rational b2 = Rational(p2, q2) + r2;
    for (long p1 = 0; p1 < q1; ++p1) {
      for (int lift = -1; lift <= 1; ++lift) {
        const Rational c = Rational(p1, q1) + lift;
        if (std::max<Rational>(a2, c - r1) < std::min<Rational>(b2, c + r1)) ++count;
      }
    }
  }
  return count;
}

void ac2(Outcome& o) {
  const auto t0 = Clock::now();
  const auto r = prefix_intersection(seq({3, 81}), LevelParams::homogeneous(Rational(1), 1), 0, 2, kDefaultPrecision);
  const double dt = seconds_since(t0);
  const auto count = r.levels.back().count;
  const long brute = brute_force_components(3, 81, Rational(1, 9), Rational(1, 6561));
  o.require(count.is_point(), "certified count is exact");
  o.require(count.min >= kAc2CountMin && count.max <= kAc2CountMax, "count in [48, 60]");
  o.require(count.min == brute, "count equals brute-force scan");
  o.require(dt < kAc2Seconds, "runtime < 1 s");
  o.detail << "count = " << count.min.get_str() << ", brute force = " << brute << ", " << dt << " s";
}

void ac3(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> qd(1, kAc3MaxQ), nd(0, 1'000'000);
  int mismatches = 0, out_of_bounds = 0;
  for (int i = 0; i < kAc3Cases; ++i) {
    const Integer q(qd(rng));
    Rational a(nd(rng), 1'000'000), b(nd(rng), 1'000'000);
    a.canonicalize();
    b.canonicalize();
    if (a > b) std::swap(a, b);
    Rational theta(nd(rng) % 1000, 1000);
    theta.canonicalize();
    const Integer got = count_shifted_rationals(a, b, theta, q);
    long direct = 0;
    for (long p = 0; p < q.get_si(); ++p) {
      const Rational x = (Rational(p) + theta) / q;
      if (a < x && x < b) ++direct;
    }
    if (got != direct) ++mismatches;
    const Rational g(got);
    if (g < (b - a) * q - 2 || g > (b - a) * q + 2) ++out_of_bounds;
  }
  o.require(mismatches == 0, "matches direct enumeration");
  o.require(out_of_bounds == 0, "(b-a)q - 2 <= count <= (b-a)q + 2");
  o.detail << kAc3Cases << " cases, " << mismatches << " mismatches, " << out_of_bounds << " bound violations";
}

void ac4(Outcome& o) {
  const auto qs = generate(ContractiveSequence{Integer(64), Rational(1)}, 3);
  const auto r = prefix_intersection(qs, LevelParams::homogeneous(Rational(1), 1), 0, 3, kDefaultPrecision);
  Integer worst = 0;
  for (const auto& l : r.levels) worst = std::max(worst, l.count.max);
  const Rational qJ(qs.q(3));
  const Rational cap = Rational(64 * 2) / (qJ * qJ);
  o.require(worst <= 64, "count never exceeds q_1 = 64");
  o.require(r.set.outer_length() <= cap, "outer length <= 64 * 2 * q_J^-2");
  o.detail << "q = [" << qs.q(1).get_str() << ", " << qs.q(2).get_str() << ", " << qs.q(3).get_str()
           << "], max count = " << worst.get_str() << ", outer length / cap = "
           << to_decimal(r.set.outer_length() / cap, 6);
}

void ac5(Outcome& o) {
  const auto small = reindex_even(seq({2, 3}), Rational(1));
  o.require(small.tau_hat == 3, "tau_hat = 3");
  const auto qs = generate(AlternatingSequence{Integer(16), Rational(1), Rational(5)}, 6);
  const auto re = reindex_even(qs, Rational(1));
  const auto check = validate_regime(re.qs, re.tau_hat, kDefaultPrecision);
  o.require(re.tau_hat == 3, "reindexed tau_hat = 3");
  o.require(check.status == RegimeStatus::pass, "reindexed prefix passes validate_regime");
  const auto st = exponent_stats(re.qs, kDefaultPrecision);
  o.detail << "tau_hat = " << to_string(re.tau_hat) << ", reindexed h = [";
  for (std::size_t i = 0; i < st.h_list.size(); ++i) o.detail << (i ? ", " : "") << st.h_list[i].lo().to_decimal(5);
  o.detail << "], regime " << to_string(check.status);
}

void ac6(Outcome& o) {
  LevelParams params = LevelParams::homogeneous(Rational(1), 2);
  const auto prod = prefix_intersection_product(seq({3, 81}), params, 2, kDefaultPrecision);
  const auto one = prefix_intersection(seq({3, 81}), LevelParams::homogeneous(Rational(1), 1), 0, 2, kDefaultPrecision);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto& c = one.levels[j].count;
    const auto& b = prod.levels[j].boxes;
    o.require(b.min == c.min * c.min && b.max == c.max * c.max,
              "level " + std::to_string(j + 1) + " box range is the squared 1-D range");
    o.detail << (j ? ", " : "") << "level " << j + 1 << ": [" << b.min.get_str() << ", " << b.max.get_str()
             << "] vs [" << c.min.get_str() << ", " << c.max.get_str() << "]^2";
  }
}

void ac7(Outcome& o) {
  const auto qs = generate(PowerSequence{Integer(4), Rational(4)}, 4);
  const auto tree = build_tree(qs, LevelParams::homogeneous(Rational(1), 1), 4);

  // additivity: materialize children for every node whose children fit the budget
  std::size_t parents = 0;
  bool additive = true;
  std::vector<CantorNode> level{tree.root()};
  for (std::size_t k = 0; k < tree.depth() && tree.branching(k + 1) <= kDefaultNodeBudget; ++k) {
    const bool keep = tree.level_size(k + 1) <= kDefaultNodeBudget;
    std::vector<CantorNode> next;
    for (const auto& node : level) {
      auto kids = tree.children(node);
      Rational sum = 0;
      for (const auto& c : kids) sum += node_measure(tree, c);
      additive = additive && sum == node_measure(tree, node);
      ++parents;
      if (keep) std::move(kids.begin(), kids.end(), std::back_inserter(next));
    }
    if (!keep) break;
    level = std::move(next);
  }
  // deeper parents: b_{k+1} equal children of mass mu(parent) / b_{k+1}
  for (std::size_t k = 0; k < tree.depth(); ++k) {
    const CantorNode parent{k, {}};
    const CantorNode child{k + 1, {}};
    additive = additive && node_measure(tree, child) * Rational(tree.branching(k + 1)) == node_measure(tree, parent);
  }
  o.require(additive, "children measures sum to the parent");

  bool separated = true;
  for (std::size_t k = 1; k <= 2; ++k) {
    separated = separated && min_separation(tree, k) >= Rational(1) / Rational(2 * qs.q(k));
  }
  for (std::size_t k = 3; k <= 4; ++k) {
    separated = separated && sampled_separation(tree, k, 5000, 11) >= Rational(1) / Rational(2 * qs.q(k));
  }
  o.require(separated, "separation >= 1/(2 q_k)");

  const auto cert = holder_certificate(tree, Rational(3, 10), kAc7Samples, 1);
  o.require(hi_of(cert.max_ratio) <= kAc7HolderBound, "max ratio <= 16");
  o.detail << parents << " parents summed exactly, max Hölder ratio <= " << cert.max_ratio.hi().to_decimal(6)
           << " (sample " << cert.worst_index << ")";
}

void ac8(Outcome& o) {
  const auto b = mult_bounds(Rational(1), Rational(1, 3), 2);
  o.require(b.lower == Rational(4, 3) && b.upper == Rational(3, 2), "mult_bounds = (4/3, 3/2)");

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> dd(1, 8), nd(1, 50), den(1, 16);
  int zero_ok = 0;
  for (int i = 0; i < 20; ++i) {
    const auto d = static_cast<std::size_t>(dd(rng));
    Rational tau(nd(rng), den(rng));
    tau.canonicalize();
    const Rational s = Rational(static_cast<unsigned long>(d - 1)) + 1 / (tau + 1);
    if (mult_cost_exponent(d, tau, s) == 0) ++zero_ok;
  }
  o.require(zero_ok == 20, "cost exponent vanishes at the critical s");

  std::size_t missed = 0;
  double lo_band = 0, hi_band = 0;
  for (unsigned K = 4; K <= 12; ++K) {
    const auto cover = hyperbolic_cover(K);
    const Rational gamma(1, Integer(1) << K);
    std::uniform_int_distribution<unsigned long> frac(0, (1UL << 30) - 1);
    for (int i = 0; i < kAc8Points; ++i) {
      Rational x(Integer(frac(rng)), Integer(1) << 30);
      x.canonicalize();
      if (i % 2 == 0) x *= Rational(1, Integer(1) << (i % (K + 1)));
      const Rational cap = x == 0 ? Rational(1) : std::min<Rational>(1, gamma / x);
      Rational y = i % 5 == 0 ? cap : cap * Rational(Integer(frac(rng)), Integer(1) << 30);
      if (i % 3 == 0) std::swap(x, y);
      if (!cover.contains(x, y)) ++missed;
    }
    const double scaled = hyperbolic_cover(K, Rational(8, 5)).s_cost.approx() * std::exp2(0.6 * K);
    lo_band = K == 4 ? scaled : std::min(lo_band, scaled);
    hi_band = K == 4 ? scaled : std::max(hi_band, scaled);
  }
  o.require(missed == 0, "cover contains every sampled point");
  o.require(hi_band / lo_band <= kAc8Band, "s_cost * gamma^-0.6 within a factor 16");
  o.detail << "bounds (" << to_string(b.lower) << ", " << to_string(b.upper) << "), " << zero_ok
           << "/20 zeros, " << missed << " uncovered of " << 9 * kAc8Points << ", band " << lo_band << " .. "
           << hi_band;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ac9(Outcome& o) {
  auto cfg = parse_config(R"(name: reproducibility
sequence: {kind: power, q1: 4, c: 4}
tau: 1
depth: 2
tasks: [analyze, enumerate, dimension, cantor, multiplicative]
cantor: {s: 3/10, samples: 300, seed: 5}
multiplicative: {K: 8, s: 8/5}
)");
  cfg.canonical = true;
  const auto base = std::filesystem::temp_directory_path() / "liminf_acceptance";
  std::string texts[2];
  for (int i = 0; i < 2; ++i) {
    cfg.out_dir = (base / std::to_string(i)).string();
    std::filesystem::remove_all(cfg.out_dir);
    write_outputs(cfg, run(cfg).report);
    texts[i] = slurp(std::filesystem::path(cfg.out_dir) / "report.json");
  }
  o.require(!texts[0].empty(), "report written");
  o.require(texts[0] == texts[1], "byte-identical reports");
  o.detail << texts[0].size() << " bytes, identical = " << (texts[0] == texts[1] ? "yes" : "no");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"power-family bracket", ac1},          {"enumeration oracle", ac2},
      {"shifted-rational counting", ac3},     {"contractive collapse", ac4},
      {"even reindexing", ac5},               {"product factorization", ac6},
      {"mass distribution", ac7},             {"multiplicative bounds and cover", ac8},
      {"canonical reproducibility", ac9},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::printf("AC%d %s  %s: %s\n", index, o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
