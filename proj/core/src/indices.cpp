#include "polarnet/indices.hpp"

#include <cmath>

namespace polarnet {
namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("rho must lie in [0, 1]");
}

void check_pair(const LaplacianKit& kit, NodeId s0, NodeId s1) {
  if (s0 == s1) throw InvalidInput("leaders must differ");
  if (s0 >= kit.node_count() || s1 >= kit.node_count()) throw InvalidInput("leader id out of range");
}

}  // namespace

double disagreement(const WeightedGraph& g, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != g.node_count()) throw InvalidInput("opinion vector length must equal node count");
  double d = 0.0;
  for (const auto& e : g.edges()) {
    const double gap = x(static_cast<Eigen::Index>(e.u)) - x(static_cast<Eigen::Index>(e.v));
    d += e.w * gap * gap;
  }
  return d;
}

double disagreement_quadratic(const Eigen::MatrixXd& laplacian, const Eigen::VectorXd& x) {
  return x.dot(laplacian * x);
}

double polarization(const Eigen::VectorXd& x) {
  if (x.size() == 0) return 0.0;
  return (x.array() - x.mean()).square().sum();
}

WeightedPolarization weighted_polarization(const Eigen::VectorXd& x, const Eigen::VectorXd& kappa) {
  if (x.size() != kappa.size()) throw InvalidInput("kappa length must equal opinion vector length");
  if ((kappa.array() <= 0.0).any()) throw InvalidInput("kappa must be strictly positive");
  WeightedPolarization out;
  out.alpha = kappa.dot(x) / kappa.sum();
  out.value = (kappa.array() * (x.array() - out.alpha).square()).sum();
  return out;
}

Eigen::MatrixXd kappa_projector(const Eigen::VectorXd& kappa) {
  const auto n = kappa.size();
  return Eigen::MatrixXd::Identity(n, n) - Eigen::VectorXd::Ones(n) * kappa.transpose() / kappa.sum();
}

double weighted_polarization_quadratic(const Eigen::VectorXd& x, const Eigen::VectorXd& kappa) {
  const Eigen::MatrixXd p = kappa_projector(kappa);
  const Eigen::VectorXd px = p * x;
  return px.dot(kappa.asDiagonal() * px);
}

double pd_index(double disagreement, double polarization, double rho) {
  check_rho(rho);
  return rho * disagreement + (1.0 - rho) * polarization;
}

double fd_disagreement_closed(const LaplacianKit& kit, NodeId s0, NodeId s1) {
  check_pair(kit, s0, s1);
  return 1.0 / resistance_distance(kit, s1, s0);
}

double fd_polarization_closed(const LaplacianKit& kit, NodeId s0, NodeId s1) {
  check_pair(kit, s0, s1);
  const double r = resistance_distance(kit, s1, s0);
  const double db = biharmonic_distance(kit, s1, s0);
  return (db / r) * (db / r);
}

Eigen::VectorXd fj_centered_source(const FjModel& m) {
  const Eigen::VectorXd s = m.source();
  return s - m.kappa() * (s.sum() / m.kappa().sum());
}

double fj_disagreement_quadratic(const FjModel& m) {
  Eigen::LLT<Eigen::MatrixXd> chol(m.system_matrix());
  const Eigen::VectorXd y = chol.solve(fj_centered_source(m));
  return y.dot(laplacian_matrix(m.graph()) * y);
}

double fj_weighted_polarization_quadratic(const FjModel& m) {
  Eigen::LLT<Eigen::MatrixXd> chol(m.system_matrix());
  const Eigen::VectorXd y = chol.solve(fj_centered_source(m));
  return (m.kappa().array() * y.array().square()).sum();
}

double fj_index_closed(const FjModel& m, double rho) {
  if (rho != 0.5) throw InvalidInput("fj_index_closed is only valid at rho = 1/2; use fj_report for other rho");
  Eigen::LLT<Eigen::MatrixXd> chol(m.system_matrix());
  if (chol.info() != Eigen::Success) throw NumericalError("fj_index_closed: L + K is not positive definite");
  const Eigen::VectorXd st = fj_centered_source(m);
  return 0.5 * st.dot(chol.solve(st));
}

IndexReport fd_report(const FdModel& m, double rho) {
  check_rho(rho);
  const Eigen::VectorXd x = fd_steady_state(m).opinions;
  IndexReport r;
  r.model = "fd";
  r.disagreement = disagreement(m.graph(), x);
  r.polarization = polarization(x);
  r.rho = rho;
  r.index = pd_index(r.disagreement, r.polarization, rho);
  return r;
}

IndexReport fj_report(const FjModel& m, double rho) {
  check_rho(rho);
  const Eigen::VectorXd x = fj_steady_state(m).opinions;
  const auto wp = weighted_polarization(x, m.kappa());
  IndexReport r;
  r.model = "fj";
  r.disagreement = disagreement(m.graph(), x);
  r.polarization = polarization(x);
  r.weighted_polarization = wp.value;
  r.alpha = wp.alpha;
  r.rho = rho;
  r.index = pd_index(r.disagreement, wp.value, rho);
  return r;
}

}  // namespace polarnet
