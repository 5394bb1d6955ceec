#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polarnet {

using NodeId = std::size_t;

/// Raised when a caller-supplied value violates an operation's domain.
/// The CLI maps these to usage errors (exit 1).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a linear solve or eigendecomposition fails (exit 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// How build_graph treats a second edge on an already-seen unordered pair.
enum class DuplicatePolicy { keep_first, sum, error };

struct Neighbor {
  NodeId node;
  double weight;
};

/// Undirected simple graph with strictly positive edge weights on nodes 0..n-1.
/// Immutable once constructed.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates the edge list: ids in range, no self-loops, positive weights,
  /// no repeated unordered pair. Edges are stored with u < v in input order.
  WeightedGraph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Neighbor>& neighbors(NodeId v) const { return adjacency_.at(v); }

  /// Weight of edge {u, v}, or nullopt when absent.
  std::optional<double> weight(NodeId u, NodeId v) const;
  double weighted_degree(NodeId v) const;
  double total_weight() const;
  double min_weight() const;
  double max_weight() const;

  bool is_connected() const;
  /// Connected-component label per node, labels numbered in order of
  /// their smallest member.
  std::vector<std::size_t> component_labels() const;

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// node_count = max(min_node_count, 1 + largest id).
WeightedGraph build_graph(std::span<const Edge> edge_list,
                          DuplicatePolicy policy = DuplicatePolicy::keep_first,
                          std::size_t min_node_count = 0);

/// Number of edges in the list that repeat an earlier unordered pair.
std::size_t count_duplicate_edges(std::span<const Edge> edge_list);

struct Component {
  WeightedGraph graph;
  std::vector<NodeId> original_id;              // new id -> old id
  std::vector<std::optional<NodeId>> new_id;    // old id -> new id
};

/// Largest connected component, relabeled densely in increasing original id.
/// Ties between equal-sized components go to the one holding the smallest id.
Component largest_connected_component(const WeightedGraph& g);

WeightedGraph scale_weights(const WeightedGraph& g, double factor);

/// Same topology, new weights (one per edge, in edges() order).
WeightedGraph with_weights(const WeightedGraph& g, std::span<const double> weights);

WeightedGraph complete_graph(std::size_t n, double weight = 1.0);
WeightedGraph path_graph(std::size_t n, double weight = 1.0);

}  // namespace polarnet
