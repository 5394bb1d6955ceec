#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polarnet/dynamics.hpp"
#include "polarnet/graph.hpp"

namespace polarnet {

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InvalidInput(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Edge list: one `u v [w]` per line, w defaulting to 1, `#` comment lines
/// and blank lines skipped. Returns the raw list (duplicates preserved).
std::vector<Edge> read_edge_list(std::istream& in);
std::vector<Edge> read_edge_list_file(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const WeightedGraph& g);

struct NodeAttributes {
  Eigen::VectorXd kappa;
  Eigen::VectorXd beta;
};

/// Node attributes: one `v kappa beta` per line, optional `# node kappa beta`
/// header. Every node 0..n-1 must appear exactly once.
NodeAttributes read_node_attributes(std::istream& in, std::size_t node_count);
NodeAttributes read_node_attributes_file(const std::filesystem::path& path, std::size_t node_count);
void write_node_attributes(std::ostream& out, const NodeAttributes& attrs);

/// CSV with columns t, x_0 .. x_{n-1}.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// Writes to a sibling temporary file and renames it into place, so a
/// failure never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace polarnet
