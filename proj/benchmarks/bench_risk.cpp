#include <benchmark/benchmark.h>

#include <cmath>

#include "seqlab/seqlab.hpp"

using namespace seqlab;

namespace {

const NoiseProfile kUnit = NoiseProfile::constant(1.0);
const Ball kBall(DecaySequence::power(1.0), 1.0);

void BM_SupRiskMinimax(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DiagonalWeights w = minimax_weights(kBall, kUnit, 0.01, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(sup_risk_over_ball(w, kBall, kUnit, 0.01, n).report.value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SupRiskMinimax)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity(benchmark::oN);

void BM_NestedTailProgram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Vector c(n), b(n);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = 0.5 + 0.5 * std::sin(0.37 * j);
    b[j] = 1.0 / (1.0 + j);
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_nested_tail_program(c, b).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NestedTailProgram)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity(benchmark::oN);

void BM_PinskerMinimaxRisk(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  const std::size_t n = default_truncation(eps, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(pinsker_minimax_risk(1.0, kBall, eps, n).value);
}
BENCHMARK(BM_PinskerMinimaxRisk)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_McRisk(benchmark::State& state) {
  const std::size_t n = 256;
  const DiagonalWeights w = minimax_weights(kBall, kUnit, 0.1, n);
  const Vector x = worst_case_signal(kBall, n);
  const auto reps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_risk(w, x, kUnit, 0.1, reps, 0).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McRisk)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_TailCheck(benchmark::State& state) {
  const DiagonalQuadraticForm q = DiagonalQuadraticForm::identity(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_tail_check(q, 1.0, 10000, 0).exceedances);
}
BENCHMARK(BM_TailCheck)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
