#include "polarnet/design_fj.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "polarnet/laplacian.hpp"
#include "polarnet/projection.hpp"

namespace polarnet {
namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("rho must lie in [0, 1]");
}

void check_node_vectors(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  if (n == 0) throw InvalidInput("graph has no nodes");
  if (kappa.size() != n || beta.size() != n) throw InvalidInput("kappa and beta must have one entry per node");
  if ((kappa.array() <= 0.0).any()) throw InvalidInput("kappa must be strictly positive");
  if ((beta.array() < 0.0).any() || (beta.array() > 1.0).any()) throw InvalidInput("beta must lie in [0, 1]");
}

void check_binary(const Eigen::VectorXd& beta) {
  for (Eigen::Index v = 0; v < beta.size(); ++v)
    if (beta(v) != 0.0 && beta(v) != 1.0) throw InvalidInput("preference flipping requires binary beta (node " + std::to_string(v) + ")");
}

std::vector<NodeId> top_k(const Eigen::VectorXd& d, std::size_t k) {
  std::vector<NodeId> order(static_cast<std::size_t>(d.size()));
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return d(static_cast<Eigen::Index>(a)) > d(static_cast<Eigen::Index>(b));
  });
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

double flip_objective(const PreferenceObjective& obj, const Eigen::VectorXd& beta, const std::vector<NodeId>& flipped) {
  return obj.value(apply_flips(beta, flipped));
}

// Shared first-order loop for both flip relaxations. `step` maps (d, grad, t)
// to the next iterate; `penalty` is the nonsmooth part of the composite.
template <typename Step, typename Penalty>
void run_flip_solver(const PreferenceObjective& obj, const Eigen::VectorXd& beta, const SolverOptions& opt, Step step,
                     Penalty penalty, FlipPlan& plan) {
  const Eigen::VectorXd p = (0.5 - beta.array()).matrix();
  auto smooth = [&](const Eigen::VectorXd& d) { return obj.value(apply_flips(beta, d)); };
  auto smooth_grad = [&](const Eigen::VectorXd& d) -> Eigen::VectorXd {
    return (2.0 * p.array() * obj.gradient(apply_flips(beta, d)).array()).matrix();
  };

  Eigen::VectorXd d = Eigen::VectorXd::Zero(beta.size());
  double fd = smooth(d);
  double t = 1.0;
  for (plan.iterations = 0; plan.iterations < opt.max_iterations;) {
    const Eigen::VectorXd g = smooth_grad(d);
    Eigen::VectorXd next;
    double fn = 0.0;
    for (;;) {
      next = step(d, g, t);
      const Eigen::VectorXd delta = next - d;
      fn = smooth(next);
      const double model = fd + g.dot(delta) + delta.squaredNorm() / (2.0 * t);
      if (fn <= model + 1e-15 * std::max(1.0, std::abs(fd)) || t < 1e-18) break;
      t *= 0.5;
    }
    ++plan.iterations;
    const double change = (next - d).cwiseAbs().maxCoeff();
    // reject a step that would raise the composite objective through rounding
    if (fn + penalty(next) > fd + penalty(d)) {
      // stalled at rounding level: judge optimality by the unit-step fixed-point residual
      const double residual = (step(d, g, 1.0) - d).cwiseAbs().maxCoeff();
      plan.converged = change <= opt.step_tolerance ||
                       residual <= opt.gradient_tolerance * std::max(1.0, g.cwiseAbs().maxCoeff());
      break;
    }
    d = std::move(next);
    fd = fn;
    if (change <= opt.step_tolerance) {
      plan.converged = true;
      break;
    }
    t *= 2.0;
  }
  plan.relaxed = std::move(d);
  plan.relaxed_objective = fd;
}

FlipPlan finish_plan(const PreferenceObjective& obj, const Eigen::VectorXd& beta, FlipPlan plan) {
  plan.theta = apply_flips(beta, plan.flipped);
  plan.objective_before = obj.value(beta);
  plan.objective_after = obj.value(plan.theta);
  plan.rho = obj.rho();
  return plan;
}

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

PreferenceObjective::PreferenceObjective(const WeightedGraph& g, Eigen::VectorXd kappa, double rho)
    : laplacian_(laplacian_matrix(g)), kappa_(std::move(kappa)), rho_(rho) {
  check_rho(rho_);
  if (static_cast<std::size_t>(kappa_.size()) != g.node_count()) throw InvalidInput("kappa must have one entry per node");
  if ((kappa_.array() <= 0.0).any()) throw InvalidInput("kappa must be strictly positive");
  Eigen::MatrixXd m = laplacian_;
  m.diagonal() += kappa_;
  system_.compute(m);
  if (system_.info() != Eigen::Success) throw NumericalError("L + K is not positive definite");
}

double PreferenceObjective::value(const Eigen::VectorXd& theta) const {
  const Eigen::VectorXd x = system_.solve(kappa_.cwiseProduct(theta));
  const double alpha = kappa_.dot(x) / kappa_.sum();
  const double dis = x.dot(laplacian_ * x);
  const double wpol = (kappa_.array() * (x.array() - alpha).square()).sum();
  return rho_ * dis + (1.0 - rho_) * wpol;
}

Eigen::VectorXd PreferenceObjective::gradient(const Eigen::VectorXd& theta) const {
  const Eigen::VectorXd x = system_.solve(kappa_.cwiseProduct(theta));
  const double alpha = kappa_.dot(x) / kappa_.sum();
  const Eigen::VectorXd dx = rho_ * (laplacian_ * x) + (1.0 - rho_) * kappa_.cwiseProduct((x.array() - alpha).matrix());
  return 2.0 * kappa_.cwiseProduct(system_.solve(dx));
}

Eigen::VectorXd apply_flips(const Eigen::VectorXd& beta, const Eigen::VectorXd& selection) {
  if (selection.size() != beta.size()) throw InvalidInput("selection vector length must equal node count");
  return beta + 2.0 * selection.cwiseProduct((0.5 - beta.array()).matrix());
}

Eigen::VectorXd apply_flips(const Eigen::VectorXd& beta, const std::vector<NodeId>& flipped) {
  Eigen::VectorXd theta = beta;
  for (NodeId v : flipped) {
    if (v >= static_cast<NodeId>(beta.size())) throw InvalidInput("flipped node out of range");
    theta(static_cast<Eigen::Index>(v)) = 1.0 - beta(static_cast<Eigen::Index>(v));
  }
  return theta;
}

WeightObjective::WeightObjective(const WeightedGraph& topology, Eigen::VectorXd kappa, const Eigen::VectorXd& beta)
    : edges_(topology.edges()), kappa_(std::move(kappa)) {
  check_node_vectors(topology, kappa_, beta);
  const Eigen::VectorXd s = beta.cwiseProduct(kappa_);
  centered_source_ = s - kappa_ * (s.sum() / kappa_.sum());
}

Eigen::MatrixXd WeightObjective::system_matrix(const Eigen::VectorXd& weights) const {
  if (static_cast<std::size_t>(weights.size()) != edges_.size()) throw InvalidInput("one weight per edge required");
  Eigen::MatrixXd m = kappa_.asDiagonal();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto u = static_cast<Eigen::Index>(edges_[i].u);
    const auto v = static_cast<Eigen::Index>(edges_[i].v);
    const double w = weights(static_cast<Eigen::Index>(i));
    m(u, u) += w;
    m(v, v) += w;
    m(u, v) -= w;
    m(v, u) -= w;
  }
  return m;
}

double WeightObjective::value(const Eigen::VectorXd& weights) const {
  Eigen::LLT<Eigen::MatrixXd> chol(system_matrix(weights));
  if (chol.info() != Eigen::Success) throw NumericalError("L(w) + K is not positive definite");
  return 0.5 * centered_source_.dot(chol.solve(centered_source_));
}

Eigen::VectorXd WeightObjective::gradient(const Eigen::VectorXd& weights) const {
  Eigen::LLT<Eigen::MatrixXd> chol(system_matrix(weights));
  if (chol.info() != Eigen::Success) throw NumericalError("L(w) + K is not positive definite");
  const Eigen::VectorXd y = chol.solve(centered_source_);
  Eigen::VectorXd g(static_cast<Eigen::Index>(edges_.size()));
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const double gap = y(static_cast<Eigen::Index>(edges_[i].u)) - y(static_cast<Eigen::Index>(edges_[i].v));
    g(static_cast<Eigen::Index>(i)) = -0.5 * gap * gap;
  }
  return g;
}

WeightDesign optimize_weights(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta,
                              const WeightBounds& bounds, const SolverOptions& opt) {
  const auto m = static_cast<double>(g.edge_count());
  if (!(bounds.lower >= 0.0)) throw InvalidInput("infeasible weights: lower bound must be nonnegative");
  if (!(bounds.lower <= bounds.upper))
    throw InvalidInput("infeasible weights: lower bound exceeds upper bound");
  if (m * bounds.lower > bounds.budget) {
    std::ostringstream os;
    os << "infeasible weights: m * lower = " << m * bounds.lower << " exceeds budget " << bounds.budget;
    throw InvalidInput(os.str());
  }
  const WeightObjective obj(g, kappa, beta);
  auto project = [&](const Eigen::VectorXd& y) { return project_box_budget(y, bounds.lower, bounds.upper, bounds.budget); };

  WeightDesign out;
  if (g.edge_count() == 0) {
    out.weights = Eigen::VectorXd();
    out.objective = out.initial_objective = obj.value(out.weights);
    out.converged = true;
    return out;
  }
  Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.edge_count()),
                                                std::clamp(bounds.budget / m, bounds.lower, bounds.upper));
  double f = obj.value(w);
  out.initial_objective = f;

  Eigen::VectorXd w_prev, g_prev;
  double t = 1.0;
  Eigen::VectorXd grad = obj.gradient(w);
  for (out.iterations = 0; out.iterations < opt.max_iterations; ++out.iterations) {
    out.projected_gradient_norm = (w - project(w - grad)).norm();
    if (out.projected_gradient_norm <= opt.gradient_tolerance) {
      out.converged = true;
      break;
    }
    if (out.iterations > 0) {
      // Barzilai-Borwein trial step, then Armijo halving along the projection arc
      const Eigen::VectorXd s = w - w_prev;
      const Eigen::VectorXd y = grad - g_prev;
      const double sy = s.dot(y);
      t = sy > 0.0 ? std::clamp(s.squaredNorm() / sy, 1e-12, 1e12) : std::min(2.0 * t, 1e12);
    }
    Eigen::VectorXd next;
    double fn = 0.0;
    bool accepted = false;
    for (; t >= 1e-20; t *= 0.5) {
      next = project(w - t * grad);
      fn = obj.value(next);
      if (fn <= f + opt.armijo * grad.dot(next - w)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    w_prev = std::move(w);
    g_prev = std::move(grad);
    w = std::move(next);
    f = fn;
    grad = obj.gradient(w);
  }
  if (!out.converged) out.projected_gradient_norm = (w - project(w - grad)).norm();
  out.weights = std::move(w);
  out.objective = f;
  return out;
}

FlipPlan flip_preferences_l1(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta,
                             double lambda, double rho, const SolverOptions& opt) {
  if (!(lambda >= 0.0)) throw InvalidInput("lambda must be nonnegative");
  check_rho(rho);
  check_node_vectors(g, kappa, beta);
  check_binary(beta);
  const PreferenceObjective obj(g, kappa, rho);

  FlipPlan plan;
  plan.lambda = lambda;
  run_flip_solver(
      obj, beta, opt,
      [&](const Eigen::VectorXd& d, const Eigen::VectorXd& grad, double t) -> Eigen::VectorXd {
        // d >= 0, so the l1 prox is a shift by t*lambda before clipping to [0,1]
        return ((d - t * grad).array() - t * lambda).max(0.0).min(1.0).matrix();
      },
      [&](const Eigen::VectorXd& d) { return lambda * d.sum(); }, plan);

  for (Eigen::Index v = 0; v < plan.relaxed.size(); ++v)
    if (plan.relaxed(v) > opt.round_threshold) plan.flipped.push_back(static_cast<NodeId>(v));
  return finish_plan(obj, beta, std::move(plan));
}

FlipPlan flip_preferences_budget(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta,
                                 std::size_t k, double rho, const SolverOptions& opt) {
  check_rho(rho);
  check_node_vectors(g, kappa, beta);
  if (k > g.node_count()) throw InvalidInput("flip budget k exceeds node count");
  const PreferenceObjective obj(g, kappa, rho);

  FlipPlan plan;
  plan.budget = k;
  if (k == 0) {
    plan.relaxed = Eigen::VectorXd::Zero(beta.size());
    plan.relaxed_objective = obj.value(beta);
    plan.converged = true;
    return finish_plan(obj, beta, std::move(plan));
  }
  const auto cap = static_cast<double>(k);
  run_flip_solver(
      obj, beta, opt,
      [&](const Eigen::VectorXd& d, const Eigen::VectorXd& grad, double t) -> Eigen::VectorXd {
        return project_capped_simplex(d - t * grad, cap);
      },
      [](const Eigen::VectorXd&) { return 0.0; }, plan);
  plan.flipped = top_k(plan.relaxed, k);
  return finish_plan(obj, beta, std::move(plan));
}

RandomFlipStats random_flip_baseline(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta,
                                     std::size_t k, std::size_t trials, std::uint64_t seed, double rho) {
  if (trials == 0) throw InvalidInput("random_flip_baseline: trials must be at least 1");
  check_node_vectors(g, kappa, beta);
  const std::size_t n = g.node_count();
  if (k > n) throw InvalidInput("flip budget k exceeds node count");
  const PreferenceObjective obj(g, kappa, rho);

  std::mt19937_64 rng(seed);
  std::vector<NodeId> ids(n);
  RandomFlipStats stats;
  stats.values.reserve(trials);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::iota(ids.begin(), ids.end(), NodeId{0});
    // partial Fisher-Yates: the first k slots are a uniform k-subset
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(ids[i], ids[pick(rng)]);
    }
    std::vector<NodeId> chosen(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
    stats.values.push_back(flip_objective(obj, beta, chosen));
  }
  const double count = static_cast<double>(trials);
  // identical draws (k = 0 or k = n) keep their exact value instead of a rounded average
  const bool constant = std::adjacent_find(stats.values.begin(), stats.values.end(), std::not_equal_to<>()) == stats.values.end();
  stats.mean = constant ? stats.values.front() : std::accumulate(stats.values.begin(), stats.values.end(), 0.0) / count;
  double var = 0.0;
  for (double v : stats.values) var += (v - stats.mean) * (v - stats.mean);
  stats.stddev = std::sqrt(var / count);
  return stats;
}

FlipOracleResult exhaustive_flip_oracle(const WeightedGraph& g, const Eigen::VectorXd& kappa,
                                        const Eigen::VectorXd& beta, std::size_t k, double rho) {
  check_node_vectors(g, kappa, beta);
  const std::size_t n = g.node_count();
  k = std::min(k, n);
  double total = 0.0;
  for (std::size_t j = 0; j <= k; ++j) total += std::exp(log_binomial(n, j));
  if (total > static_cast<double>(kExhaustiveFlipLimit) * (1.0 + 1e-9)) {
    std::ostringstream os;
    os << "exhaustive_flip_oracle: " << total << " flip sets exceed the limit of " << kExhaustiveFlipLimit;
    throw InvalidInput(os.str());
  }
  const PreferenceObjective obj(g, kappa, rho);

  FlipOracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  best.worst_objective = -std::numeric_limits<double>::infinity();
  std::vector<NodeId> set;
  for (std::size_t size = 0; size <= k; ++size) {
    // lexicographic enumeration of size-`size` subsets
    set.resize(size);
    std::iota(set.begin(), set.end(), NodeId{0});
    for (;;) {
      const double value = flip_objective(obj, beta, set);
      ++best.sets_evaluated;
      if (value < best.objective) {
        best.objective = value;
        best.flipped = set;
      }
      best.worst_objective = std::max(best.worst_objective, value);
      std::size_t i = size;
      while (i > 0 && set[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++set[i - 1];
      for (std::size_t j = i; j < size; ++j) set[j] = set[j - 1] + 1;
    }
  }
  return best;
}

std::vector<double> lambda_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0 && hi >= lo)) throw InvalidInput("lambda grid requires 0 < lo <= hi");
  if (points == 0) throw InvalidInput("lambda grid needs at least one point");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo * std::exp(ratio * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

}  // namespace polarnet
