#include "polarnet/design_fd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "polarnet/indices.hpp"

namespace polarnet {
namespace {

constexpr std::size_t kExhaustivePairLimit = 200;
constexpr std::size_t kSampledPairs = 1000;
constexpr double kSpectralSlack = 1e-9;
constexpr double kTieTolerance = 1e-12;

double pair_form(const Eigen::MatrixXd& m, NodeId u, NodeId v) {
  const auto a = static_cast<Eigen::Index>(u);
  const auto b = static_cast<Eigen::Index>(v);
  return m(a, a) + m(b, b) - 2.0 * m(a, b);
}

double pair_polarization(const LaplacianKit& kit, NodeId u, NodeId v) {
  const double r = pair_form(kit.pinv(), u, v);
  return pair_form(kit.pinv_sq(), u, v) / (r * r);
}

bool same_neighborhood(const WeightedGraph& g, NodeId s0, NodeId v) {
  auto strip = [](const std::vector<Neighbor>& nb, NodeId drop) {
    std::vector<Neighbor> out;
    for (const auto& n : nb)
      if (n.node != drop) out.push_back(n);
    return out;
  };
  const auto a = strip(g.neighbors(s0), v);
  const auto b = strip(g.neighbors(v), s0);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].node != b[i].node || a[i].weight != b[i].weight) return false;
  return true;
}

}  // namespace

LeaderChoice select_leader(const WeightedGraph& g, NodeId s0, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidInput("rho must lie in [0, 1]");
  if (g.node_count() < 2) throw InvalidInput("select_leader: need at least one candidate besides s0");
  if (s0 >= g.node_count()) throw InvalidInput("s0 out of range");
  if (!g.is_connected()) throw InvalidInput("select_leader requires a connected graph");

  const LaplacianKit kit(g);
  LeaderChoice choice;
  choice.index_value = std::numeric_limits<double>::infinity();
  choice.per_candidate.reserve(g.node_count() - 1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == s0) continue;
    const double r = pair_form(kit.pinv(), s0, v);
    CandidateScore s{v, 1.0 / r, pair_form(kit.pinv_sq(), s0, v) / (r * r), 0.0};
    s.index = rho * s.disagreement + (1.0 - rho) * s.polarization;
    // values equal up to rounding count as ties, which keep the smaller id
    if (s.index < choice.index_value - kTieTolerance * std::max(1.0, std::abs(s.index))) {
      choice.index_value = s.index;
      choice.s1 = v;
    }
    choice.per_candidate.push_back(s);
  }
  return choice;
}

std::vector<Twin> detect_twins(const WeightedGraph& g, NodeId s0) {
  if (s0 >= g.node_count()) throw InvalidInput("s0 out of range");
  std::vector<Twin> twins;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == s0 || !same_neighborhood(g, s0, v)) continue;
    const double h = g.weighted_degree(v) + g.weight(s0, v).value_or(0.0);
    twins.push_back({v, h, 0.5 * h, 0.5});
  }
  return twins;
}

SpectralCertificate check_spectral_approx(const WeightedGraph& candidate, double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidInput("epsilon must be nonnegative");
  const auto n = candidate.node_count();
  SpectralCertificate cert;
  if (n < 2) {
    cert.diagnostic = "need at least two nodes";
    cert.achieved_epsilon = std::numeric_limits<double>::infinity();
    return cert;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(laplacian_matrix(candidate), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("check_spectral_approx: eigendecomposition failed");
  // The ones vector is always in the kernel, so eigenvalues 2..n span its complement.
  const Eigen::VectorXd& ev = eig.eigenvalues();
  cert.lambda_min = ev(1);
  cert.lambda_max = ev(ev.size() - 1);
  const double nn = static_cast<double>(n);
  if (!candidate.is_connected() || cert.lambda_min <= LaplacianKit::kRelativeEigenTolerance * cert.lambda_max) {
    cert.diagnostic = "candidate graph is disconnected";
    cert.achieved_epsilon = std::numeric_limits<double>::infinity();
    return cert;
  }
  cert.normalization = nn / cert.lambda_min;
  cert.achieved_epsilon = std::max(0.0, cert.lambda_max / cert.lambda_min - 1.0);
  cert.holds = cert.lambda_min >= nn * (1.0 - kSpectralSlack) &&
               cert.lambda_max <= (1.0 + epsilon) * nn * (1.0 + kSpectralSlack);
  if (!cert.holds) {
    std::ostringstream os;
    os << "eigenvalues on 1-perp lie in [" << cert.lambda_min << ", " << cert.lambda_max << "], need ["
       << nn << ", " << (1.0 + epsilon) * nn << "]";
    cert.diagnostic = os.str();
  }
  return cert;
}

PairPolarizationSweep sweep_pair_polarization(const LaplacianKit& kit, std::uint64_t seed) {
  const auto n = kit.node_count();
  PairPolarizationSweep sweep;
  if (n < 2) return sweep;
  sweep.min_polarization = std::numeric_limits<double>::infinity();
  sweep.max_polarization = -std::numeric_limits<double>::infinity();
  auto visit = [&](NodeId u, NodeId v) {
    const double p = pair_polarization(kit, u, v);
    sweep.min_polarization = std::min(sweep.min_polarization, p);
    sweep.max_polarization = std::max(sweep.max_polarization, p);
    ++sweep.pairs;
  };
  if (n <= kExhaustivePairLimit) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) visit(u, v);
    return sweep;
  }
  sweep.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> first(0, n - 1);
  std::uniform_int_distribution<NodeId> second(0, n - 2);
  for (std::size_t i = 0; i < kSampledPairs; ++i) {
    NodeId u = first(rng);
    NodeId v = second(rng);
    if (v >= u) ++v;
    visit(u, v);
  }
  return sweep;
}

RobustDesign design_robust_graph(const RobustDesignOptions& opt) {
  const std::size_t n = opt.node_count;
  if (n < 2) throw InvalidInput("design_robust_graph: need at least two nodes");
  if (opt.max_edges < n - 1) throw InvalidInput("design_robust_graph: k must be at least n - 1");
  if (!(opt.weight_budget > 0.0)) throw InvalidInput("design_robust_graph: weight budget must be positive");
  if (!(opt.epsilon > 0.0)) throw InvalidInput("design_robust_graph: epsilon must be positive");
  if (!(opt.scale > 0.0 && opt.scale <= 1.0)) throw InvalidInput("design_robust_graph: scale must lie in (0, 1]");
  if (!(opt.sampling_constant > 0.0)) throw InvalidInput("design_robust_graph: sampling constant must be positive");

  const std::size_t pair_count = n * (n - 1) / 2;
  RobustDesign out;
  out.epsilon_requested = opt.epsilon;

  WeightedGraph certified;
  SpectralCertificate cert;
  if (opt.max_edges >= pair_count) {
    certified = complete_graph(n);
    cert = check_spectral_approx(certified, opt.epsilon);
    out.attempts = 1;
  } else {
    const double nn = static_cast<double>(n);
    auto samples = static_cast<std::size_t>(std::ceil(opt.sampling_constant * nn * std::log(nn) / (opt.epsilon * opt.epsilon)));
    samples = std::max<std::size_t>(samples, n - 1);
    double best_eps = std::numeric_limits<double>::infinity();
    WeightedGraph best;
    SpectralCertificate best_cert;
    std::size_t best_samples = 0;

    std::mt19937_64 rng(opt.seed);
    for (;;) {
      ++out.attempts;
      std::uniform_int_distribution<NodeId> first(0, n - 1);
      std::uniform_int_distribution<NodeId> second(0, n - 2);
      std::map<std::pair<NodeId, NodeId>, std::size_t> hits;
      std::size_t drawn = 0;
      bool capped = false;
      for (; drawn < samples; ++drawn) {
        NodeId u = first(rng);
        NodeId v = second(rng);
        if (v >= u) ++v;
        auto key = u < v ? std::pair{u, v} : std::pair{v, u};
        auto it = hits.find(key);
        if (it == hits.end()) {
          if (hits.size() == opt.max_edges) {
            capped = true;
            break;
          }
          hits.emplace(key, 1);
        } else {
          ++it->second;
        }
      }
      // unit weight over sampling probability 1/|pairs|, averaged over draws
      const double per_draw = static_cast<double>(pair_count) / static_cast<double>(drawn);
      std::vector<Edge> edges;
      edges.reserve(hits.size());
      for (const auto& [key, count] : hits) edges.push_back({key.first, key.second, per_draw * static_cast<double>(count)});
      WeightedGraph sample(n, std::move(edges));
      SpectralCertificate c = check_spectral_approx(sample, opt.epsilon);
      if (c.achieved_epsilon < best_eps) {
        best_eps = c.achieved_epsilon;
        best = sample;
        best_cert = c;
        best_samples = drawn;
      }
      if (c.achieved_epsilon <= opt.epsilon || capped) break;
      samples *= 2;
    }
    if (!(best_eps <= opt.epsilon)) {
      std::ostringstream os;
      os << "edge cap k=" << opt.max_edges << " too small for epsilon=" << opt.epsilon
         << "; best achieved epsilon is " << best_eps;
      throw EpsilonUnattainable(os.str(), best_eps);
    }
    certified = std::move(best);
    cert = best_cert;
    out.samples = best_samples;
  }

  // Normalize so lambda_min = n, then shrink to the weight budget.
  const double normalized_total = certified.total_weight() * cert.normalization;
  const double budget_factor = std::min(1.0, opt.weight_budget / normalized_total);
  out.rescale_factor = cert.normalization * budget_factor * opt.scale;
  out.graph = scale_weights(certified, out.rescale_factor);
  out.epsilon_achieved = cert.achieved_epsilon;
  out.edge_count = out.graph.edge_count();
  out.total_weight = out.graph.total_weight();
  // the rescaled sum can overshoot the budget by a few ulps
  while (out.total_weight > opt.weight_budget) {
    const double shrink = (opt.weight_budget / out.total_weight) * (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
    out.graph = scale_weights(out.graph, shrink);
    out.rescale_factor *= shrink;
    out.total_weight = out.graph.total_weight();
  }

  const LaplacianKit kit(out.graph);
  const auto sweep = sweep_pair_polarization(kit, opt.seed);
  out.worst_pair_polarization = sweep.max_polarization;
  out.best_pair_polarization = sweep.min_polarization;
  out.exhaustive_pairs = sweep.exhaustive;
  out.linear_bound = 0.5 * (1.0 + out.epsilon_achieved);
  out.quadratic_bound = 0.5 * (1.0 + out.epsilon_achieved) * (1.0 + out.epsilon_achieved);
  return out;
}

}  // namespace polarnet
