#include "polarnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace polarnet {
namespace {

std::pair<NodeId, NodeId> ordered(NodeId a, NodeId b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

std::string describe(const Edge& e) {
  std::ostringstream os;
  os << "(" << e.u << ", " << e.v << ", " << e.w << ")";
  return os.str();
}

void check_edge(const Edge& e) {
  if (e.u == e.v) throw InvalidInput("self-loop " + describe(e));
  if (!(e.w > 0.0) || !std::isfinite(e.w)) throw InvalidInput("nonpositive weight " + describe(e));
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)), adjacency_(node_count) {
  std::map<std::pair<NodeId, NodeId>, std::size_t> seen;
  for (auto& e : edges_) {
    check_edge(e);
    if (e.u >= node_count_ || e.v >= node_count_)
      throw InvalidInput("node id out of range in edge " + describe(e));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(std::pair{e.u, e.v}, 0).second) throw InvalidInput("duplicate edge " + describe(e));
    adjacency_[e.u].push_back({e.v, e.w});
    adjacency_[e.v].push_back({e.u, e.w});
  }
  for (auto& nb : adjacency_)
    std::sort(nb.begin(), nb.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

std::optional<double> WeightedGraph::weight(NodeId u, NodeId v) const {
  const auto& nb = adjacency_.at(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v, [](const Neighbor& n, NodeId id) { return n.node < id; });
  if (it == nb.end() || it->node != v) return std::nullopt;
  return it->weight;
}

double WeightedGraph::weighted_degree(NodeId v) const {
  double d = 0.0;
  for (const auto& n : adjacency_.at(v)) d += n.weight;
  return d;
}

double WeightedGraph::total_weight() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.w;
  return s;
}

double WeightedGraph::min_weight() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) m = std::min(m, e.w);
  return m;
}

double WeightedGraph::max_weight() const {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, e.w);
  return m;
}

std::vector<std::size_t> WeightedGraph::component_labels() const {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(node_count_, unset);
  std::vector<NodeId> stack;
  std::size_t next = 0;
  for (NodeId root = 0; root < node_count_; ++root) {
    if (label[root] != unset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const auto& n : adjacency_[v]) {
        if (label[n.node] == unset) {
          label[n.node] = next;
          stack.push_back(n.node);
        }
      }
    }
    ++next;
  }
  return label;
}

bool WeightedGraph::is_connected() const {
  if (node_count_ == 0) return false;
  auto labels = component_labels();
  return std::all_of(labels.begin(), labels.end(), [](std::size_t l) { return l == 0; });
}

WeightedGraph build_graph(std::span<const Edge> edge_list, DuplicatePolicy policy, std::size_t min_node_count) {
  std::size_t n = min_node_count;
  std::vector<Edge> kept;
  kept.reserve(edge_list.size());
  std::map<std::pair<NodeId, NodeId>, std::size_t> index;
  for (const auto& e : edge_list) {
    check_edge(e);
    n = std::max(n, std::max(e.u, e.v) + 1);
    auto key = ordered(e.u, e.v);
    auto [it, inserted] = index.emplace(key, kept.size());
    if (inserted) {
      kept.push_back({key.first, key.second, e.w});
      continue;
    }
    switch (policy) {
      case DuplicatePolicy::keep_first:
        break;
      case DuplicatePolicy::sum:
        kept[it->second].w += e.w;
        break;
      case DuplicatePolicy::error:
        throw InvalidInput("duplicate edge " + describe(e));
    }
  }
  return WeightedGraph(n, std::move(kept));
}

std::size_t count_duplicate_edges(std::span<const Edge> edge_list) {
  std::map<std::pair<NodeId, NodeId>, int> seen;
  std::size_t dup = 0;
  for (const auto& e : edge_list)
    if (!seen.emplace(ordered(e.u, e.v), 0).second) ++dup;
  return dup;
}

Component largest_connected_component(const WeightedGraph& g) {
  if (g.node_count() == 0) throw InvalidInput("largest_connected_component: empty graph");
  auto labels = g.component_labels();
  std::size_t count = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> sizes(count, 0);
  for (auto l : labels) ++sizes[l];
  // labels are ordered by smallest member, so the first maximum wins ties
  std::size_t best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  Component c;
  c.new_id.assign(g.node_count(), std::nullopt);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (labels[v] == best) {
      c.new_id[v] = c.original_id.size();
      c.original_id.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (labels[e.u] == best) edges.push_back({*c.new_id[e.u], *c.new_id[e.v], e.w});
  c.graph = WeightedGraph(c.original_id.size(), std::move(edges));
  return c;
}

WeightedGraph scale_weights(const WeightedGraph& g, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidInput("scale factor must be positive");
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.w *= factor;
  return WeightedGraph(g.node_count(), std::move(edges));
}

WeightedGraph with_weights(const WeightedGraph& g, std::span<const double> weights) {
  if (weights.size() != g.edge_count()) throw InvalidInput("with_weights: one weight per edge required");
  std::vector<Edge> edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].w = weights[i];
  return WeightedGraph(g.node_count(), std::move(edges));
}

WeightedGraph complete_graph(std::size_t n, double weight) {
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v, weight});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph path_graph(std::size_t n, double weight) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({v - 1, v, weight});
  return WeightedGraph(n, std::move(edges));
}

}  // namespace polarnet
