#include <benchmark/benchmark.h>

#include "dpbb/bnb.hpp"
#include "dpbb/generator.hpp"
#include "dpbb/lp.hpp"
#include "dpbb/pseudocost.hpp"

namespace {

// Root relaxation solve, cold start.
void BM_LpRelaxation(benchmark::State& state) {
  dpbb::GenParams params;
  params.n = static_cast<int>(state.range(0));
  dpbb::Problem problem = dpbb::generate_instance("setcover", params, 7);
  dpbb::BoundSet bounds;
  for (auto _ : state) {
    auto sol = dpbb::solve_relaxation(problem, bounds, nullptr);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_LpRelaxation)->Arg(10)->Arg(20)->Arg(40);

// Warm re-solve after a single bound change, dual simplex path.
void BM_LpWarmResolve(benchmark::State& state) {
  dpbb::GenParams params;
  params.n = static_cast<int>(state.range(0));
  dpbb::Problem problem = dpbb::generate_instance("setcover", params, 7);
  dpbb::BoundSet bounds;
  auto root = dpbb::solve_relaxation(problem, bounds, nullptr);
  dpbb::BoundSet child = bounds;
  child.overrides[0] = {0.0, 0.0};
  for (auto _ : state) {
    auto sol = dpbb::solve_relaxation(problem, child, &root.basis);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_LpWarmResolve)->Arg(10)->Arg(20)->Arg(40);

// Scoring cost of the discounted pseudocost lookup across many variables.
void BM_DiscountedScore(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  dpbb::PseudocostTable table(n);
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < 8; ++k) {
      table.record_gain(v, dpbb::Direction::Down, 0, 1.0 + v, 0.5);
      table.record_gain(v, dpbb::Direction::Up, 0, 2.0 + v, 0.5);
      table.record_gain(v, dpbb::Direction::Down, 1, 0.5 + v, 0.5);
      table.record_gain(v, dpbb::Direction::Up, 1, 0.25 + v, 0.5);
    }
  dpbb::ScoreConfig config;
  for (auto _ : state) {
    double acc = 0.0;
    for (int v = 0; v < n; ++v)
      acc += dpbb::branching_score(
          table.discounted_pseudocost(v, dpbb::Direction::Down, config.gamma) * 0.5,
          table.discounted_pseudocost(v, dpbb::Direction::Up, config.gamma) * 0.5,
          config.epsilon);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_DiscountedScore)->Arg(100)->Arg(1000);

// End-to-end tree search on a small knapsack.
void BM_SolveKnapsack(benchmark::State& state) {
  dpbb::GenParams params;
  params.n = static_cast<int>(state.range(0));
  dpbb::Problem problem = dpbb::generate_instance("knapsack", params, 3);
  for (auto _ : state) {
    dpbb::SolveConfig config;
    config.rule = "rdpscost";
    config.time_limit = 30.0;
    auto res = dpbb::solve(problem, config);
    benchmark::DoNotOptimize(res.nodes);
  }
}
BENCHMARK(BM_SolveKnapsack)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
