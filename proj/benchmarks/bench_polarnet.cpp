#include <benchmark/benchmark.h>

#include "polarnet/polarnet.hpp"

using namespace polarnet;

namespace {

WeightedGraph haggle_like(std::size_t n) {
  return random_connected_graph(n, static_cast<std::size_t>(std::lround(kHaggleAverageDegree * static_cast<double>(n) / 2.0)), 7);
}

void BM_LaplacianKit(benchmark::State& state) {
  const auto g = haggle_like(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(LaplacianKit(g).pinv_sq().data());
}
BENCHMARK(BM_LaplacianKit)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SelectLeader(benchmark::State& state) {
  const auto g = haggle_like(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(select_leader(g, 0, 0.5).s1);
}
BENCHMARK(BM_SelectLeader)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_DesignRobustGraph(benchmark::State& state) {
  RobustDesignOptions o;
  o.node_count = 100;
  o.max_edges = 2000;
  o.weight_budget = 2000.0;
  o.epsilon = 1.5;
  for (auto _ : state) benchmark::DoNotOptimize(design_robust_graph(o).epsilon_achieved);
}
BENCHMARK(BM_DesignRobustGraph)->Unit(benchmark::kMillisecond);

void BM_OptimizeWeights(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = haggle_like(n);
  const Eigen::VectorXd kappa = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 5.0);
  const auto beta = generate_random_beta(n, 0.35, 3);
  const double m = static_cast<double>(g.edge_count());
  for (auto _ : state) benchmark::DoNotOptimize(optimize_weights(g, kappa, beta, {0.1, 2.0, m}).objective);
}
BENCHMARK(BM_OptimizeWeights)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_FlipL1(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = haggle_like(n);
  const Eigen::VectorXd kappa = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 5.0);
  const auto beta = generate_random_beta(n, 0.35, 3);
  for (auto _ : state) benchmark::DoNotOptimize(flip_preferences_l1(g, kappa, beta, 0.6).objective_after);
}
BENCHMARK(BM_FlipL1)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
