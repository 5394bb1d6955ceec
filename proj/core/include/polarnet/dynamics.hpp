#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "polarnet/graph.hpp"
#include "polarnet/laplacian.hpp"

namespace polarnet {

/// French-DeGroot instance: two stubborn leaders pinned at opinions 0 (s0)
/// and 1 (s1); every other node follows its neighbors.
class FdModel {
 public:
  FdModel(WeightedGraph graph, NodeId s0, NodeId s1);

  const WeightedGraph& graph() const { return graph_; }
  NodeId s0() const { return s0_; }
  NodeId s1() const { return s1_; }
  std::vector<NodeId> followers() const;

 private:
  WeightedGraph graph_;
  NodeId s0_;
  NodeId s1_;
};

/// Friedkin-Johnsen instance with per-node susceptibility kappa > 0 and
/// preference beta in [0, 1] toward opinion 1.
class FjModel {
 public:
  FjModel(WeightedGraph graph, Eigen::VectorXd kappa, Eigen::VectorXd beta);

  const WeightedGraph& graph() const { return graph_; }
  const Eigen::VectorXd& kappa() const { return kappa_; }
  const Eigen::VectorXd& beta() const { return beta_; }

  /// L + K.
  Eigen::MatrixXd system_matrix() const;
  /// s = B K 1.
  Eigen::VectorXd source() const;

 private:
  WeightedGraph graph_;
  Eigen::VectorXd kappa_;
  Eigen::VectorXd beta_;
};

struct SteadyState {
  Eigen::VectorXd opinions;
};

/// Partitioned solve x_F = -(L_FF)^{-1} L_{F,s1}, leaders pinned.
SteadyState fd_steady_state(const FdModel& m);

/// x = (I - 1 e_{s0}^T) L† b_{s1,s0} / r_{s1,s0}; independent of the
/// partitioned solve and used to cross-check it.
Eigen::VectorXd fd_steady_state_from_potentials(const LaplacianKit& kit, NodeId s0, NodeId s1);

/// x = (L + K)^{-1} B K 1.
SteadyState fj_steady_state(const FjModel& m);

struct TrajectoryOptions {
  double horizon = 50.0;
  /// 0 selects 0.5 / max diagonal of the system matrix.
  double dt = 0.0;
  /// Defaults to the all-1/2 vector (leaders are reset to 0/1 for FD).
  std::optional<Eigen::VectorXd> initial_state;
  /// Keep every n-th step in the output (first and last always kept).
  std::size_t record_every = 1;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;

  const Eigen::VectorXd& final_state() const { return states.back(); }
};

/// Largest RK4 step that keeps the linear dynamics stable, from a
/// Gershgorin bound on the system matrix.
double max_stable_dt(const FdModel& m);
double max_stable_dt(const FjModel& m);

/// Fixed-step classical RK4 integration of the continuous-time dynamics.
Trajectory simulate_trajectory(const FdModel& m, const TrajectoryOptions& options = {});
Trajectory simulate_trajectory(const FjModel& m, const TrajectoryOptions& options = {});

}  // namespace polarnet
