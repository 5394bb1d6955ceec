#include "polarnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace polarnet {
namespace {

// Real negative eigenvalues stay inside the RK4 stability region while
// |lambda| * dt stays below this value.
constexpr double kRk4RealAxisLimit = 2.785;

double gershgorin_radius(const Eigen::MatrixXd& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

struct LinearSystem {
  Eigen::MatrixXd matrix;  // dx/dt = -matrix * x + drive
  Eigen::VectorXd drive;
};

LinearSystem fd_system(const FdModel& m) {
  LinearSystem sys{laplacian_matrix(m.graph()), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.graph().node_count()))};
  sys.matrix.row(static_cast<Eigen::Index>(m.s0())).setZero();
  sys.matrix.row(static_cast<Eigen::Index>(m.s1())).setZero();
  return sys;
}

LinearSystem fj_system(const FjModel& m) { return {m.system_matrix(), m.source()}; }

double max_dt(const Eigen::MatrixXd& matrix) {
  double radius = gershgorin_radius(matrix);
  return radius > 0.0 ? kRk4RealAxisLimit / radius : std::numeric_limits<double>::infinity();
}

Trajectory integrate(const LinearSystem& sys, Eigen::VectorXd x, const TrajectoryOptions& opt) {
  if (!(opt.horizon > 0.0)) throw InvalidInput("trajectory horizon must be positive");
  const double limit = max_dt(sys.matrix);
  double dt = opt.dt;
  if (dt == 0.0) {
    double diag = sys.matrix.diagonal().maxCoeff();
    dt = diag > 0.0 ? 0.5 / diag : opt.horizon;
  }
  if (!(dt > 0.0)) throw InvalidInput("trajectory dt must be positive");
  if (dt > limit) {
    std::ostringstream os;
    os << "unstable step size dt=" << dt << "; maximum admissible dt is " << limit;
    throw InvalidInput(os.str());
  }
  const auto steps = static_cast<std::size_t>(std::ceil(opt.horizon / dt - 1e-12));
  dt = opt.horizon / static_cast<double>(steps);
  const std::size_t every = std::max<std::size_t>(opt.record_every, 1);

  auto rhs = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd { return sys.drive - sys.matrix * y; };

  Trajectory out;
  out.times.push_back(0.0);
  out.states.push_back(x);
  for (std::size_t step = 1; step <= steps; ++step) {
    Eigen::VectorXd k1 = rhs(x);
    Eigen::VectorXd k2 = rhs(x + 0.5 * dt * k1);
    Eigen::VectorXd k3 = rhs(x + 0.5 * dt * k2);
    Eigen::VectorXd k4 = rhs(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % every == 0 || step == steps) {
      out.times.push_back(static_cast<double>(step) * dt);
      out.states.push_back(x);
    }
  }
  return out;
}

Eigen::VectorXd initial_state(const TrajectoryOptions& opt, std::size_t n) {
  if (!opt.initial_state) return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 0.5);
  if (static_cast<std::size_t>(opt.initial_state->size()) != n)
    throw InvalidInput("initial state length must equal node count");
  return *opt.initial_state;
}

}  // namespace

FdModel::FdModel(WeightedGraph graph, NodeId s0, NodeId s1) : graph_(std::move(graph)), s0_(s0), s1_(s1) {
  const auto n = graph_.node_count();
  if (s0_ >= n || s1_ >= n) throw InvalidInput("leader id out of range");
  if (s0_ == s1_) throw InvalidInput("leaders must differ");
  if (!graph_.is_connected()) throw InvalidInput("French-DeGroot model requires a connected graph");
}

std::vector<NodeId> FdModel::followers() const {
  std::vector<NodeId> f;
  for (NodeId v = 0; v < graph_.node_count(); ++v)
    if (v != s0_ && v != s1_) f.push_back(v);
  return f;
}

FjModel::FjModel(WeightedGraph graph, Eigen::VectorXd kappa, Eigen::VectorXd beta)
    : graph_(std::move(graph)), kappa_(std::move(kappa)), beta_(std::move(beta)) {
  const auto n = static_cast<Eigen::Index>(graph_.node_count());
  if (n == 0) throw InvalidInput("Friedkin-Johnsen model requires a nonempty graph");
  if (kappa_.size() != n || beta_.size() != n) throw InvalidInput("kappa and beta must have one entry per node");
  for (Eigen::Index v = 0; v < n; ++v) {
    if (!(kappa_(v) > 0.0) || !std::isfinite(kappa_(v)))
      throw InvalidInput("kappa must be strictly positive (node " + std::to_string(v) + ")");
    if (!(beta_(v) >= 0.0 && beta_(v) <= 1.0))
      throw InvalidInput("beta must lie in [0, 1] (node " + std::to_string(v) + ")");
  }
}

Eigen::MatrixXd FjModel::system_matrix() const {
  Eigen::MatrixXd m = laplacian_matrix(graph_);
  m.diagonal() += kappa_;
  return m;
}

Eigen::VectorXd FjModel::source() const { return beta_.cwiseProduct(kappa_); }

SteadyState fd_steady_state(const FdModel& m) {
  const auto n = static_cast<Eigen::Index>(m.graph().node_count());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  x(static_cast<Eigen::Index>(m.s1())) = 1.0;
  const auto f = m.followers();
  if (f.empty()) return {x};

  const Eigen::MatrixXd l = laplacian_matrix(m.graph());
  const auto nf = static_cast<Eigen::Index>(f.size());
  Eigen::MatrixXd lff(nf, nf);
  Eigen::VectorXd rhs(nf);
  for (Eigen::Index i = 0; i < nf; ++i) {
    const auto fi = static_cast<Eigen::Index>(f[static_cast<std::size_t>(i)]);
    rhs(i) = -l(fi, static_cast<Eigen::Index>(m.s1()));
    for (Eigen::Index j = 0; j < nf; ++j) lff(i, j) = l(fi, static_cast<Eigen::Index>(f[static_cast<std::size_t>(j)]));
  }
  Eigen::LLT<Eigen::MatrixXd> chol(lff);
  if (chol.info() != Eigen::Success) throw NumericalError("fd_steady_state: follower block is not positive definite");
  Eigen::VectorXd xf = chol.solve(rhs);
  for (Eigen::Index i = 0; i < nf; ++i) x(static_cast<Eigen::Index>(f[static_cast<std::size_t>(i)])) = xf(i);
  return {x};
}

Eigen::VectorXd fd_steady_state_from_potentials(const LaplacianKit& kit, NodeId s0, NodeId s1) {
  if (s0 == s1) throw InvalidInput("leaders must differ");
  Eigen::VectorXd phi = kit.potentials(s1, s0);
  const double r = phi(static_cast<Eigen::Index>(s1)) - phi(static_cast<Eigen::Index>(s0));
  if (!(r > 0.0)) throw NumericalError("leaders are not connected");
  return (phi.array() - phi(static_cast<Eigen::Index>(s0))).matrix() / r;
}

SteadyState fj_steady_state(const FjModel& m) {
  Eigen::LLT<Eigen::MatrixXd> chol(m.system_matrix());
  if (chol.info() != Eigen::Success) throw NumericalError("fj_steady_state: L + K is not positive definite");
  return {chol.solve(m.source())};
}

double max_stable_dt(const FdModel& m) { return max_dt(fd_system(m).matrix); }
double max_stable_dt(const FjModel& m) { return max_dt(fj_system(m).matrix); }

Trajectory simulate_trajectory(const FdModel& m, const TrajectoryOptions& options) {
  Eigen::VectorXd x = initial_state(options, m.graph().node_count());
  x(static_cast<Eigen::Index>(m.s0())) = 0.0;
  x(static_cast<Eigen::Index>(m.s1())) = 1.0;
  return integrate(fd_system(m), std::move(x), options);
}

Trajectory simulate_trajectory(const FjModel& m, const TrajectoryOptions& options) {
  return integrate(fj_system(m), initial_state(options, m.graph().node_count()), options);
}

}  // namespace polarnet
