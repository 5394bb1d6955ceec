#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "polarnet/polarnet.hpp"

namespace polarnet::testing {

// Spanning tree over a random permutation, then each remaining pair with
// probability `density`. Weights uniform in [lo, hi] (lo == hi gives unit).
inline WeightedGraph random_graph(std::size_t n, double density, std::uint64_t seed, double lo = 1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(lo, hi);
  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    const NodeId u = order[std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)];
    const NodeId v = order[i];
    used[u][v] = used[v][u] = true;
    edges.push_back({u, v, lo == hi ? lo : weight(rng)});
  }
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (!used[u][v] && unit(rng) < density) edges.push_back({u, v, lo == hi ? lo : weight(rng)});
  return WeightedGraph(n, std::move(edges));
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::pair<NodeId, NodeId> random_pair(std::mt19937_64& rng, std::size_t n) {
  const NodeId a = uniform_index(rng, 0, n - 1);
  NodeId b = uniform_index(rng, 0, n - 2);
  if (b >= a) ++b;
  return {a, b};
}

inline Eigen::VectorXd uniform_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = dist(rng);
  return v;
}

// Binary preferences with both values present.
inline Eigen::VectorXd mixed_binary(std::mt19937_64& rng, std::size_t n, double prob_zero = 0.35) {
  Eigen::VectorXd b;
  do {
    b = uniform_vector(rng, n, 0.0, 1.0);
    b = (b.array() < prob_zero).select(Eigen::VectorXd::Zero(b.size()), Eigen::VectorXd::Ones(b.size()));
  } while (b.minCoeff() == b.maxCoeff());
  return b;
}

// Dense Laplacian assembled straight from the edge list.
inline Eigen::MatrixXd oracle_laplacian(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    L(u, u) += e.w;
    L(v, v) += e.w;
    L(u, v) -= e.w;
    L(v, u) -= e.w;
  }
  return L;
}

// For connected graphs: L^+ = (L + J/n)^{-1} - J/n.
inline Eigen::MatrixXd oracle_pinv(const WeightedGraph& g) {
  const Eigen::MatrixXd L = oracle_laplacian(g);
  const auto n = L.rows();
  const Eigen::MatrixXd J = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  return (L + J).fullPivLu().inverse() - J;
}

struct FdOracle {
  Eigen::VectorXd opinions;
  double resistance = 0.0;
  double disagreement = 0.0;
  double polarization = 0.0;
};

// Unit current into s1, out of s0; opinions are normalized voltages.
inline FdOracle oracle_fd(const WeightedGraph& g, NodeId s0, NodeId s1) {
  const Eigen::MatrixXd P = oracle_pinv(g);
  const auto i0 = static_cast<Eigen::Index>(s0), i1 = static_cast<Eigen::Index>(s1);
  const Eigen::VectorXd phi = P.col(i1) - P.col(i0);
  FdOracle o;
  o.resistance = phi(i1) - phi(i0);
  o.opinions = (phi.array() - phi(i0)) / o.resistance;
  for (const auto& e : g.edges()) {
    const double gap = o.opinions(static_cast<Eigen::Index>(e.u)) - o.opinions(static_cast<Eigen::Index>(e.v));
    o.disagreement += e.w * gap * gap;
  }
  o.polarization = (o.opinions.array() - o.opinions.mean()).square().sum();
  return o;
}

// FJ opinions by an LU solve of (L + K) x = K beta.
inline Eigen::VectorXd oracle_fj(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta) {
  Eigen::MatrixXd M = oracle_laplacian(g);
  M.diagonal() += kappa;
  return M.fullPivLu().solve(kappa.cwiseProduct(beta));
}

// Definitional rho D + (1 - rho) P~ at the FJ steady state.
inline double oracle_fj_index(const WeightedGraph& g, const Eigen::VectorXd& kappa, const Eigen::VectorXd& beta, double rho) {
  const Eigen::VectorXd x = oracle_fj(g, kappa, beta);
  double d = 0.0;
  for (const auto& e : g.edges()) {
    const double gap = x(static_cast<Eigen::Index>(e.u)) - x(static_cast<Eigen::Index>(e.v));
    d += e.w * gap * gap;
  }
  const double alpha = kappa.dot(x) / kappa.sum();
  const double p = (kappa.array() * (x.array() - alpha).square()).sum();
  return rho * d + (1.0 - rho) * p;
}

inline Eigen::VectorXd central_difference(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& at,
                                          double h) {
  Eigen::VectorXd g(at.size());
  for (Eigen::Index i = 0; i < at.size(); ++i) {
    Eigen::VectorXd up = at, down = at;
    up(i) += h;
    down(i) -= h;
    g(i) = (f(up) - f(down)) / (2.0 * h);
  }
  return g;
}

inline WeightedGraph barbell(std::size_t q) {
  std::vector<Edge> edges;
  for (std::size_t base : {std::size_t{0}, q})
    for (NodeId i = 0; i < q; ++i)
      for (NodeId j = i + 1; j < q; ++j) edges.push_back({base + i, base + j, 1.0});
  edges.push_back({0, q, 1.0});  // bridge
  return WeightedGraph(2 * q, std::move(edges));
}

// Nodes 0 and 1 are the pendant leaders, hanging off clique nodes 2 and 3.
inline WeightedGraph pendant_complete(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 2; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  edges.push_back({0, 2, 1.0});
  edges.push_back({1, 3, 1.0});
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph star_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({0, v, 1.0});
  return WeightedGraph(n, std::move(edges));
}

// Every connected unit-weight graph on n labelled nodes.
inline std::vector<WeightedGraph> all_connected_graphs(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<WeightedGraph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1U) edges.push_back({pairs[i].first, pairs[i].second, 1.0});
    WeightedGraph g(n, std::move(edges));
    if (g.is_connected()) out.push_back(std::move(g));
  }
  return out;
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace polarnet::testing
