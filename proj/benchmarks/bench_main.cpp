#include <benchmark/benchmark.h>

#include "prorata/prorata.hpp"

namespace {

using namespace prorata;

PayoffFamily cfmm() { return PayoffFamily::cfmm({0.99, 200.0, 250.0, 1.0}); }
PayoffFamily power() { return PayoffFamily::power({0.5, 0.05}); }

void BM_FindRootW(benchmark::State& state) {
  const PayoffFamily f = cfmm();
  for (auto _ : state) benchmark::DoNotOptimize(find_root_w(f));
}
BENCHMARK(BM_FindRootW);

void BM_SolveSymmetricClosedForm(benchmark::State& state) {
  const PayoffFamily f = cfmm();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_symmetric(f, n));
}
BENCHMARK(BM_SolveSymmetricClosedForm)->Arg(2)->Arg(100);

void BM_SolveSymmetricNumeric(benchmark::State& state) {
  const PayoffFamily f = power();
  EquilibriumOptions opts;
  opts.path = SolvePath::Numeric;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_symmetric(f, n, opts));
}
BENCHMARK(BM_SolveSymmetricNumeric)->Arg(2)->Arg(100);

void BM_BestResponse(benchmark::State& state) {
  EquilibriumOptions opts;
  opts.path = state.range(0) == 0 ? SolvePath::Auto : SolvePath::Numeric;
  const BestResponseSolver solve(cfmm(), opts);
  double y = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(y));
    y = y > 40.0 ? 0.0 : y + 0.37;
  }
  state.SetLabel(state.range(0) == 0 ? "closed form" : "golden section");
}
BENCHMARK(BM_BestResponse)->Arg(0)->Arg(1);

void BM_Simulate(benchmark::State& state) {
  GameConfig config(power(), static_cast<int>(state.range(0)));
  config.record_profiles = false;
  const StrategyProfile start = init_uniform(config);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(config, start));
}
BENCHMARK(BM_Simulate)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_ConvergenceStudy(benchmark::State& state) {
  const std::vector<int> ns{2, 4, 8, 16};
  StudyOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(convergence_study(cfmm(), ns, 100, 1, opts));
}
BENCHMARK(BM_ConvergenceStudy)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_ClearBatch(benchmark::State& state) {
  std::vector<double> deltas(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < deltas.size(); ++i) deltas[i] = (i % 3 == 0) ? -1.0 : 2.0 + 0.01 * i;
  const BatchInstance batch{deltas, {0.99, 200.0, 250.0}};
  for (auto _ : state) benchmark::DoNotOptimize(clear(batch));
}
BENCHMARK(BM_ClearBatch)->Arg(16)->Arg(1024);

}  // namespace
BENCHMARK_MAIN();
