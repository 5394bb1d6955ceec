#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarnet/graph.hpp"
#include "polarnet/laplacian.hpp"

namespace polarnet {

struct CandidateScore {
  NodeId candidate = 0;
  double disagreement = 0.0;
  double polarization = 0.0;
  double index = 0.0;
};

struct LeaderChoice {
  NodeId s1 = 0;
  double index_value = 0.0;
  std::vector<CandidateScore> per_candidate;  // every v != s0, ascending id
};

/// Exhaustive opposing-leader placement: scores every candidate s1 from one
/// shared pseudoinverse (D = 1/r, P = (d_B/r)^2) and returns the minimizer of
/// rho*D + (1-rho)*P. Ties go to the smallest node id.
LeaderChoice select_leader(const WeightedGraph& g, NodeId s0, double rho);

struct Twin {
  NodeId node = 0;
  double h = 0.0;  // eigenvalue of L on b_{node,s0}
  double predicted_disagreement = 0.0;
  double predicted_polarization = 0.5;
};

/// Nodes v != s0 sharing s0's neighborhood with identical weights (ignoring
/// the s0-v edge itself). For such v, L b_{v,s0} = h b_{v,s0}, so placing
/// the opposing leader there gives P = 1/2 and D = h/2.
std::vector<Twin> detect_twins(const WeightedGraph& g, NodeId s0);

struct SpectralCertificate {
  bool holds = false;
  /// lambda_max / lambda_min - 1 on the complement of the ones vector.
  double achieved_epsilon = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  /// n / lambda_min: multiplying all weights by this puts lambda_min at n.
  double normalization = 0.0;
  std::string diagnostic;
};

/// Tests L_C <= L_H <= (1+epsilon) L_C against the unweighted complete graph
/// on the same node count.
SpectralCertificate check_spectral_approx(const WeightedGraph& candidate, double epsilon);

struct PairPolarizationSweep {
  double min_polarization = 0.0;
  double max_polarization = 0.0;
  std::size_t pairs = 0;
  bool exhaustive = true;
};

/// Polarization over leader pairs: all pairs for n <= 200, otherwise 1000
/// seeded random pairs.
PairPolarizationSweep sweep_pair_polarization(const LaplacianKit& kit, std::uint64_t seed = 42);

struct RobustDesignOptions {
  std::size_t node_count = 0;
  std::size_t max_edges = 0;      // k
  double weight_budget = 0.0;     // W
  double epsilon = 0.5;
  std::uint64_t seed = 42;
  double sampling_constant = 4.0; // C in q = ceil(C n ln n / eps^2)
  /// Extra uniform factor in (0, 1] applied after the budget rescale; lowers
  /// every pair's D by this factor and leaves P untouched.
  double scale = 1.0;
};

struct RobustDesign {
  WeightedGraph graph;
  double epsilon_requested = 0.0;
  double epsilon_achieved = 0.0;
  std::size_t edge_count = 0;
  double total_weight = 0.0;
  double worst_pair_polarization = 0.0;
  double best_pair_polarization = 0.0;
  bool exhaustive_pairs = true;
  /// (1+eps)/2 and (1+eps)^2/2 at the achieved epsilon.
  double linear_bound = 0.0;
  double quadratic_bound = 0.0;
  std::size_t samples = 0;
  std::size_t attempts = 0;
  /// Factor applied to the certified (lambda_min = n) graph to meet the
  /// budget and user scale.
  double rescale_factor = 1.0;
};

/// Thrown when the edge cap prevents certifying the requested epsilon.
class EpsilonUnattainable : public std::runtime_error {
 public:
  EpsilonUnattainable(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_epsilon() const { return achieved_; }

 private:
  double achieved_;
};

/// Sparse topology whose polarization stays near 1/2 for every leader pair.
///
/// With k >= n(n-1)/2 the unweighted complete graph is returned. Otherwise
/// edges of K_n are sampled uniformly with replacement (effective resistances
/// of K_n are all equal), reweighted, certified with check_spectral_approx
/// and retried with doubled sample counts until certified or the edge cap is
/// reached. The certified graph is normalized to lambda_min = n and then
/// scaled down to the weight budget.
RobustDesign design_robust_graph(const RobustDesignOptions& options);

}  // namespace polarnet
