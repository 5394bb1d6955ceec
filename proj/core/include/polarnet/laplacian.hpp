#pragma once

#include <Eigen/Dense>

#include "polarnet/graph.hpp"

namespace polarnet {

/// Dense L = D - A.
Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g);

/// b_{u,v} = e_u - e_v.
Eigen::VectorXd incidence_vector(std::size_t n, NodeId u, NodeId v);

/// Laplacian of one graph snapshot together with L† and L²† = (L†)².
///
/// L† comes from a symmetric eigendecomposition with eigenvalues below
/// 1e-10 * lambda_max treated as zero. Immutable after construction, so one
/// kit can be shared across threads evaluating many node pairs.
class LaplacianKit {
 public:
  static constexpr double kRelativeEigenTolerance = 1e-10;

  explicit LaplacianKit(const WeightedGraph& g);

  std::size_t node_count() const { return static_cast<std::size_t>(laplacian_.rows()); }
  const Eigen::MatrixXd& laplacian() const { return laplacian_; }
  const Eigen::MatrixXd& pinv() const { return pinv_; }
  const Eigen::MatrixXd& pinv_sq() const { return pinv_sq_; }
  /// Ascending eigenvalues of L.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  /// L† b_{u,v}: node potentials (mean zero) when unit current enters at u
  /// and leaves at v.
  Eigen::VectorXd potentials(NodeId u, NodeId v) const;

 private:
  Eigen::MatrixXd laplacian_;
  Eigen::MatrixXd pinv_;
  Eigen::MatrixXd pinv_sq_;
  Eigen::VectorXd eigenvalues_;
};

/// r_{u,v} = b^T L† b. Returns 0 for u == v.
double resistance_distance(const LaplacianKit& kit, NodeId u, NodeId v);

/// d_B(u,v) = sqrt(b^T L²† b). Returns 0 for u == v.
double biharmonic_distance(const LaplacianKit& kit, NodeId u, NodeId v);

}  // namespace polarnet
