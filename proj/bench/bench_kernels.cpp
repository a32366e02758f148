#include <benchmark/benchmark.h>

#include "liminf/cantor_measure.hpp"
#include "liminf/level_sets.hpp"
#include "liminf/sequences.hpp"

using namespace liminf;

namespace {

// Level 2 has ~3.5e4 arcs, each refined into ~10 pieces at level 3.
const QSequence& refine_qs() {
  static const QSequence qs({Integer(50), Integer(125000), Integer(220000000)});
  return qs;
}

LevelParams refine_params() {
  LevelParams p = LevelParams::homogeneous(Rational(1, 2), 1);
  p.theta[0] = Rational(1, 3);
  return p;
}

void BM_Refine(benchmark::State& state, Exec exec) {
  const auto params = refine_params();
  const auto level2 = prefix_intersection(refine_qs(), params, 0, 2, kDefaultPrecision).set;
  const auto radius = params.radius_of(refine_qs().q(3), kDefaultPrecision);
  for (auto _ : state) {
    auto out = exec == Exec::serial
                   ? refine_serial(level2, refine_qs().q(3), params.theta[0], radius, kDefaultComponentBudget, 3)
                   : refine_parallel(level2, refine_qs().q(3), params.theta[0], radius, kDefaultComponentBudget, 3);
    benchmark::DoNotOptimize(out);
  }
}

void BM_BuildTree(benchmark::State& state, Exec exec) {
  const QSequence qs({Integer(4), Integer(256), Integer(4294967296)});
  const auto params = LevelParams::homogeneous(Rational(1), 1);
  for (auto _ : state) {
    auto tree = build_tree(qs, params, 3, kDefaultPrecision, 10'000'000, exec);
    benchmark::DoNotOptimize(tree);
  }
}

void BM_Holder(benchmark::State& state, Exec exec) {
  const auto qs = generate(PowerSequence{Integer(4), Rational(4)}, 4);
  const auto tree = build_tree(qs, LevelParams::homogeneous(Rational(1), 1), 4);
  for (auto _ : state) {
    auto cert = holder_certificate(tree, Rational(3, 10), 200, 7, exec);
    benchmark::DoNotOptimize(cert);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Refine, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Refine, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BuildTree, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BuildTree, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Holder, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Holder, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
