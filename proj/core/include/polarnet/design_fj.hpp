#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "polarnet/graph.hpp"

namespace polarnet {

/// I~(rho) of the FJ steady state as a function of the preference vector
/// theta, for a fixed graph and susceptibility. Factorizes L + K once.
class PreferenceObjective {
 public:
  PreferenceObjective(const WeightedGraph& g, Eigen::VectorXd kappa, double rho);

  std::size_t node_count() const { return static_cast<std::size_t>(kappa_.size()); }
  double rho() const { return rho_; }

  double value(const Eigen::VectorXd& theta) const;
  /// d I~ / d theta = 2 K (L+K)^{-1} (rho L x + (1-rho) K x~).
  Eigen::VectorXd gradient(const Eigen::VectorXd& theta) const;

 private:
  Eigen::MatrixXd laplacian_;
  Eigen::VectorXd kappa_;
  double rho_;
  Eigen::LLT<Eigen::MatrixXd> system_;
};

/// theta = beta + 2 diag(d) (1/2 - beta): selected nodes take 1 - beta.
Eigen::VectorXd apply_flips(const Eigen::VectorXd& beta, const Eigen::VectorXd& selection);
Eigen::VectorXd apply_flips(const Eigen::VectorXd& beta, const std::vector<NodeId>& flipped);

/// I~(1/2) = 1/2 s~^T (L(w)+K)^{-1} s~ as a function of the edge weights of
/// a fixed topology (weights in edges() order).
class WeightObjective {
 public:
  WeightObjective(const WeightedGraph& topology, Eigen::VectorXd kappa, const Eigen::VectorXd& beta);

  std::size_t edge_count() const { return edges_.size(); }
  double value(const Eigen::VectorXd& weights) const;
  /// d I~ / d w_e = -1/2 (b_e^T y)^2 with y = (L+K)^{-1} s~.
  Eigen::VectorXd gradient(const Eigen::VectorXd& weights) const;

 private:
  Eigen::MatrixXd system_matrix(const Eigen::VectorXd& weights) const;

  std::vector<Edge> edges_;
  Eigen::VectorXd kappa_;
  Eigen::VectorXd centered_source_;
};

struct WeightBounds {
  double lower = 0.0;
  double upper = 1.0;
  double budget = 1.0;
};

struct SolverOptions {
  std::size_t max_iterations = 20000;
  /// Stationarity: ||w - proj(w - grad)|| at or below this stops the solver.
  double gradient_tolerance = 1e-7;
  /// Successive-iterate change (max norm) at or below this stops the flip solvers.
  double step_tolerance = 1e-9;
  double armijo = 1e-4;
  /// Relaxed entries above this count as selected by the l1 rounding.
  double round_threshold = 1e-6;
};

struct WeightDesign {
  Eigen::VectorXd weights;
  double objective = 0.0;
  double initial_objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double projected_gradient_norm = 0.0;
};

/// Minimizes I~(1/2) over lower <= w_e <= upper, sum w_e <= budget by
/// projected gradient with Armijo backtracking (halving), starting from
/// w_e = clamp(budget / m, lower, upper).
WeightDesign optimize_weights(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta,
                              const WeightBounds& bounds, const SolverOptions& options = {});

struct FlipPlan {
  Eigen::VectorXd relaxed;        // d in [0,1]^n
  std::vector<NodeId> flipped;    // ascending
  Eigen::VectorXd theta;          // preferences after flipping
  double objective_before = 0.0;
  double objective_after = 0.0;
  double relaxed_objective = 0.0; // I~ at the relaxed d (without penalty)
  double rho = 0.5;
  std::optional<double> lambda;
  std::optional<std::size_t> budget;
  std::size_t iterations = 0;
  bool converged = false;
};

/// l1-regularized relaxation: min I~(theta(d)) + lambda 1^T d over d in
/// [0,1]^n by proximal gradient; every entry above the round threshold is
/// flipped. Requires binary beta.
FlipPlan flip_preferences_l1(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta,
                             double lambda, double rho = 0.5, const SolverOptions& options = {});

/// Budget relaxation: min I~(theta(d)) over 0 <= d <= 1, 1^T d <= k by
/// projected gradient; flips the k largest relaxed entries (ties by id).
FlipPlan flip_preferences_budget(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta,
                                 std::size_t k, double rho = 0.5, const SolverOptions& options = {});

struct RandomFlipStats {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation over trials
  std::vector<double> values;
};

/// Flips a uniformly random k-subset per trial.
RandomFlipStats random_flip_baseline(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta,
                                     std::size_t k, std::size_t trials, std::uint64_t seed, double rho = 0.5);

struct FlipOracleResult {
  std::vector<NodeId> flipped;
  double objective = 0.0;
  /// Largest I~ over the same family of flip sets.
  double worst_objective = 0.0;
  std::size_t sets_evaluated = 0;
};

/// Largest number of flip sets exhaustive_flip_oracle will enumerate.
inline constexpr std::size_t kExhaustiveFlipLimit = 1'000'000;

/// Best flip set of size <= k by enumeration.
FlipOracleResult exhaustive_flip_oracle(const WeightedGraph& g, const Eigen::VectorXd& kappa,
                                        const Eigen::VectorXd& beta, std::size_t k, double rho = 0.5);

/// Geometric grid of `points` values from lo to hi inclusive.
std::vector<double> lambda_grid(double lo = 0.45, double hi = 1.0, std::size_t points = 12);

}  // namespace polarnet
