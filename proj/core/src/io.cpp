#include "polarnet/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <system_error>

namespace polarnet {
namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

bool skip_line(const std::vector<std::string>& tok) { return tok.empty() || tok.front().front() == '#'; }

NodeId parse_id(const std::string& s, std::size_t line) {
  NodeId v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("invalid node id '" + s + "'", line);
  return v;
}

double parse_real(const std::string& s, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::logic_error&) {
    throw ParseError(std::string("invalid ") + what + " '" + s + "'", line);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<Edge> read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto tok = tokens(line);
    if (skip_line(tok)) continue;
    if (tok.size() < 2 || tok.size() > 3) throw ParseError("expected 'u v [w]'", lineno);
    Edge e{parse_id(tok[0], lineno), parse_id(tok[1], lineno), 1.0};
    if (tok.size() == 3) e.w = parse_real(tok[2], lineno, "weight");
    if (e.u == e.v) throw ParseError("self-loop on node " + tok[0], lineno);
    if (!(e.w > 0.0)) throw ParseError("nonpositive weight " + tok[2], lineno);
    edges.push_back(e);
  }
  return edges;
}

std::vector<Edge> read_edge_list_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "# u v w\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

NodeAttributes read_node_attributes(std::istream& in, std::size_t node_count) {
  const auto n = static_cast<Eigen::Index>(node_count);
  NodeAttributes attrs{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  std::vector<bool> seen(node_count, false);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto tok = tokens(line);
    if (skip_line(tok)) continue;
    if (tok.size() != 3) throw ParseError("expected 'v kappa beta'", lineno);
    const NodeId v = parse_id(tok[0], lineno);
    if (v >= node_count) throw ParseError("node " + tok[0] + " is not in the graph", lineno);
    if (seen[v]) throw ParseError("node " + tok[0] + " listed twice", lineno);
    seen[v] = true;
    const double kappa = parse_real(tok[1], lineno, "kappa");
    const double beta = parse_real(tok[2], lineno, "beta");
    if (!(kappa > 0.0)) throw ParseError("kappa must be positive", lineno);
    if (!(beta >= 0.0 && beta <= 1.0)) throw ParseError("beta must lie in [0, 1]", lineno);
    attrs.kappa(static_cast<Eigen::Index>(v)) = kappa;
    attrs.beta(static_cast<Eigen::Index>(v)) = beta;
  }
  for (std::size_t v = 0; v < node_count; ++v)
    if (!seen[v]) throw ParseError("missing attributes for node " + std::to_string(v), 0);
  return attrs;
}

NodeAttributes read_node_attributes_file(const std::filesystem::path& path, std::size_t node_count) {
  auto in = open_input(path);
  return read_node_attributes(in, node_count);
}

void write_node_attributes(std::ostream& out, const NodeAttributes& attrs) {
  out << "# node kappa beta\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index v = 0; v < attrs.kappa.size(); ++v) out << v << ' ' << attrs.kappa(v) << ' ' << attrs.beta(v) << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  if (trajectory.states.empty()) return;
  out << "t";
  for (Eigen::Index i = 0; i < trajectory.states.front().size(); ++i) out << ",x_" << i;
  out << '\n' << std::setprecision(12);
  for (std::size_t s = 0; s < trajectory.states.size(); ++s) {
    out << trajectory.times[s];
    for (Eigen::Index i = 0; i < trajectory.states[s].size(); ++i) out << ',' << trajectory.states[s](i);
    out << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw InvalidInput("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace polarnet
