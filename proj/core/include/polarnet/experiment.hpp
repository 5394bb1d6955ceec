#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "polarnet/graph.hpp"

namespace polarnet {

/// beta_v = 0 with probability prob_zero, otherwise 1. Deterministic in seed.
Eigen::VectorXd generate_random_beta(std::size_t n, double prob_zero, std::uint64_t seed);

/// Connected unweighted graph: a random recursive tree on n nodes plus
/// uniformly random extra edges until `edge_count` edges exist.
WeightedGraph random_connected_graph(std::size_t n, std::size_t edge_count, std::uint64_t seed);

/// Average degree of the largest component of the Haggle contact network
/// after deduplication (274 nodes, 2124 edges).
inline constexpr double kHaggleAverageDegree = 2.0 * 2124.0 / 274.0;

struct ExperimentConfig {
  double rho = 0.5;
  double prob_zero = 0.35;
  /// Uniform susceptibility applied to every node.
  double kappa = 5.0;
  double lambda_min = 0.45;
  double lambda_max = 1.0;
  std::size_t lambda_points = 12;
  std::size_t random_trials = 100;
  std::uint64_t seed = 42;
};

struct ExperimentRow {
  double lambda = 0.0;
  std::size_t flips = 0;  // nonzeros of the l1 solution
  double index_l1 = 0.0;
  double index_topk = 0.0;
  double index_random_mean = 0.0;
  double index_random_std = 0.0;
  bool l1_converged = false;
};

struct ExperimentReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double prob_zero = 0.0;
  double kappa = 0.0;
  double rho = 0.5;
  std::uint64_t seed = 0;
  double index_before = 0.0;
  std::size_t zero_preferences = 0;
  std::vector<ExperimentRow> rows;  // ascending lambda
};

/// Reduces the graph to its largest connected component.
WeightedGraph prepare_experiment_graph(const WeightedGraph& g);

/// For each lambda on the sweep: solve the l1 relaxation, read off its flip
/// count k, then compare against top-k of the budget relaxation and against
/// k random flips. Beta is drawn with generate_random_beta(seed).
ExperimentReport run_flip_experiment(const WeightedGraph& g, const ExperimentConfig& config);

/// Same protocol with a caller-supplied preference vector.
ExperimentReport run_flip_experiment(const WeightedGraph& g, const Eigen::VectorXd& beta, const ExperimentConfig& config);

}  // namespace polarnet
