#include "polarnet/report.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

namespace polarnet {
namespace {

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

nlohmann::json to_json(const IndexReport& r) {
  return {
      {"model", r.model},
      {"disagreement", r.disagreement},
      {"polarization", r.polarization},
      {"weighted_polarization", optional_json(r.weighted_polarization)},
      {"alpha", optional_json(r.alpha)},
      {"rho", r.rho},
      {"index", r.index},
  };
}

nlohmann::json to_json(const LeaderChoice& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : c.per_candidate)
    rows.push_back({{"candidate", s.candidate},
                    {"disagreement", s.disagreement},
                    {"polarization", s.polarization},
                    {"index", s.index}});
  return {{"s1", c.s1}, {"index", c.index_value}, {"candidates", std::move(rows)}};
}

nlohmann::json to_json(const Twin& t) {
  return {{"node", t.node},
          {"h", t.h},
          {"predicted_disagreement", t.predicted_disagreement},
          {"predicted_polarization", t.predicted_polarization}};
}

nlohmann::json to_json(const RobustDesign& d) {
  return {
      {"epsilon_requested", d.epsilon_requested},
      {"epsilon_achieved", d.epsilon_achieved},
      {"edge_count", d.edge_count},
      {"total_weight", d.total_weight},
      {"worst_pair_polarization", d.worst_pair_polarization},
      {"best_pair_polarization", d.best_pair_polarization},
      {"exhaustive_pairs", d.exhaustive_pairs},
      {"bound_linear", d.linear_bound},
      {"bound_quadratic", d.quadratic_bound},
      {"samples", d.samples},
      {"attempts", d.attempts},
      {"rescale_factor", d.rescale_factor},
      {"node_count", d.graph.node_count()},
  };
}

nlohmann::json to_json(const WeightDesign& d, const WeightedGraph& topology) {
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t i = 0; i < topology.edge_count(); ++i) {
    const auto& e = topology.edges()[i];
    edges.push_back({{"u", e.u}, {"v", e.v}, {"w", d.weights(static_cast<Eigen::Index>(i))}});
  }
  return {
      {"objective", d.objective},
      {"initial_objective", d.initial_objective},
      {"iterations", d.iterations},
      {"converged", d.converged},
      {"projected_gradient_norm", d.projected_gradient_norm},
      {"total_weight", d.weights.sum()},
      {"edges", std::move(edges)},
  };
}

nlohmann::json to_json(const FlipPlan& p) {
  return {
      {"flipped", p.flipped},
      {"flip_count", p.flipped.size()},
      {"objective_before", p.objective_before},
      {"objective_after", p.objective_after},
      {"relaxed_objective", p.relaxed_objective},
      {"relaxed", to_vector(p.relaxed)},
      {"theta", to_vector(p.theta)},
      {"rho", p.rho},
      {"lambda", optional_json(p.lambda)},
      {"budget", optional_json(p.budget)},
      {"iterations", p.iterations},
      {"converged", p.converged},
  };
}

nlohmann::json to_json(const RandomFlipStats& s) {
  return {{"mean", s.mean}, {"std", s.stddev}, {"values", s.values}};
}

nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"lambda", row.lambda},
                    {"k", row.flips},
                    {"index_l1", row.index_l1},
                    {"index_topk", row.index_topk},
                    {"index_random_mean", row.index_random_mean},
                    {"index_random_std", row.index_random_std},
                    {"l1_converged", row.l1_converged}});
  return {
      {"node_count", r.node_count},
      {"edge_count", r.edge_count},
      {"prob_zero", r.prob_zero},
      {"kappa", r.kappa},
      {"rho", r.rho},
      {"seed", r.seed},
      {"zero_preferences", r.zero_preferences},
      {"index_before", r.index_before},
      {"rows", std::move(rows)},
  };
}

std::string experiment_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "lambda,k,index_l1,index_topk,index_random_mean,index_random_std\n";
  for (const auto& row : r.rows)
    os << row.lambda << ',' << row.flips << ',' << row.index_l1 << ',' << row.index_topk << ','
       << row.index_random_mean << ',' << row.index_random_std << '\n';
  return os.str();
}

}  // namespace polarnet
