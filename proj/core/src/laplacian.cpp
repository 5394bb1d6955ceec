#include "polarnet/laplacian.hpp"

#include <algorithm>
#include <cmath>

namespace polarnet {
namespace {

void check_node(const LaplacianKit& kit, NodeId v) {
  if (v >= kit.node_count()) throw InvalidInput("node id " + std::to_string(v) + " out of range");
}

// b^T M b for b = e_u - e_v, without forming b.
double pair_form(const Eigen::MatrixXd& m, NodeId u, NodeId v) {
  return m(u, u) + m(v, v) - m(u, v) - m(v, u);
}

}  // namespace

Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    l(u, u) += e.w;
    l(v, v) += e.w;
    l(u, v) -= e.w;
    l(v, u) -= e.w;
  }
  return l;
}

Eigen::VectorXd incidence_vector(std::size_t n, NodeId u, NodeId v) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  b(static_cast<Eigen::Index>(u)) += 1.0;
  b(static_cast<Eigen::Index>(v)) -= 1.0;
  return b;
}

LaplacianKit::LaplacianKit(const WeightedGraph& g) : laplacian_(laplacian_matrix(g)) {
  const auto n = laplacian_.rows();
  if (n == 0) throw InvalidInput("LaplacianKit: empty graph");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(laplacian_);
  if (eig.info() != Eigen::Success) throw NumericalError("LaplacianKit: eigendecomposition failed");
  eigenvalues_ = eig.eigenvalues();
  const double cutoff = kRelativeEigenTolerance * std::max(eigenvalues_.maxCoeff(), 0.0);

  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (eigenvalues_(i) > cutoff) inv(i) = 1.0 / eigenvalues_(i);

  const Eigen::MatrixXd& q = eig.eigenvectors();
  pinv_ = q * inv.asDiagonal() * q.transpose();
  pinv_ = 0.5 * (pinv_ + pinv_.transpose());
  pinv_sq_ = pinv_ * pinv_;
}

Eigen::VectorXd LaplacianKit::potentials(NodeId u, NodeId v) const {
  check_node(*this, u);
  check_node(*this, v);
  return pinv_.col(static_cast<Eigen::Index>(u)) - pinv_.col(static_cast<Eigen::Index>(v));
}

double resistance_distance(const LaplacianKit& kit, NodeId u, NodeId v) {
  check_node(kit, u);
  check_node(kit, v);
  if (u == v) return 0.0;
  return pair_form(kit.pinv(), u, v);
}

double biharmonic_distance(const LaplacianKit& kit, NodeId u, NodeId v) {
  check_node(kit, u);
  check_node(kit, v);
  if (u == v) return 0.0;
  return std::sqrt(std::max(pair_form(kit.pinv_sq(), u, v), 0.0));
}

}  // namespace polarnet
