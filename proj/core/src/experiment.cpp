#include "polarnet/experiment.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "polarnet/design_fj.hpp"

namespace polarnet {

Eigen::VectorXd generate_random_beta(std::size_t n, double prob_zero, std::uint64_t seed) {
  if (!(prob_zero >= 0.0 && prob_zero <= 1.0)) throw InvalidInput("prob_zero must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd beta(static_cast<Eigen::Index>(n));
  for (Eigen::Index v = 0; v < beta.size(); ++v) beta(v) = unit(rng) < prob_zero ? 0.0 : 1.0;
  return beta;
}

WeightedGraph random_connected_graph(std::size_t n, std::size_t edge_count, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("random_connected_graph: need at least two nodes");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (edge_count < n - 1 || edge_count > max_edges)
    throw InvalidInput("random_connected_graph: edge count must lie in [n-1, n(n-1)/2]");
  std::mt19937_64 rng(seed);
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<Edge> edges;
  edges.reserve(edge_count);
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> parent(0, v - 1);
    const NodeId u = parent(rng);
    seen.emplace(u, v);
    edges.push_back({u, v, 1.0});
  }
  std::uniform_int_distribution<NodeId> any(0, n - 1);
  while (edges.size() < edge_count) {
    NodeId u = any(rng);
    NodeId v = any(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (seen.emplace(u, v).second) edges.push_back({u, v, 1.0});
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph prepare_experiment_graph(const WeightedGraph& g) { return largest_connected_component(g).graph; }

ExperimentReport run_flip_experiment(const WeightedGraph& g, const ExperimentConfig& config) {
  return run_flip_experiment(g, generate_random_beta(g.node_count(), config.prob_zero, config.seed), config);
}

ExperimentReport run_flip_experiment(const WeightedGraph& g, const Eigen::VectorXd& beta, const ExperimentConfig& config) {
  if (!g.is_connected()) throw InvalidInput("flip experiment requires a connected graph (extract the LCC first)");
  if (!(config.kappa > 0.0)) throw InvalidInput("kappa must be positive");
  const auto n = static_cast<Eigen::Index>(g.node_count());
  const Eigen::VectorXd kappa = Eigen::VectorXd::Constant(n, config.kappa);
  const auto lambdas = lambda_grid(config.lambda_min, config.lambda_max, config.lambda_points);

  ExperimentReport report;
  report.node_count = g.node_count();
  report.edge_count = g.edge_count();
  report.prob_zero = config.prob_zero;
  report.kappa = config.kappa;
  report.rho = config.rho;
  report.seed = config.seed;
  report.zero_preferences = static_cast<std::size_t>((beta.array() == 0.0).count());

  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lambda = lambdas[i];
    ExperimentRow row;
    row.lambda = lambda;
    try {
      const FlipPlan l1 = flip_preferences_l1(g, kappa, beta, lambda, config.rho);
      report.index_before = l1.objective_before;
      row.flips = l1.flipped.size();
      row.index_l1 = l1.objective_after;
      row.l1_converged = l1.converged;
      row.index_topk = flip_preferences_budget(g, kappa, beta, row.flips, config.rho).objective_after;
      const auto random = random_flip_baseline(g, kappa, beta, row.flips, config.random_trials, config.seed + 1 + i, config.rho);
      row.index_random_mean = random.mean;
      row.index_random_std = random.stddev;
    } catch (const InvalidInput& e) {
      throw InvalidInput("lambda=" + std::to_string(lambda) + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("lambda=" + std::to_string(lambda) + ": " + e.what());
    }
    report.rows.push_back(row);
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ExperimentRow& a, const ExperimentRow& b) { return a.lambda < b.lambda; });
  return report;
}

}  // namespace polarnet
