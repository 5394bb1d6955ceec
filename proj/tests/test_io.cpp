#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace polarnet;
namespace pt = polarnet::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / "polarnet_io_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("read_edge_list: comments, blanks and default weights") {
  std::istringstream in("# u v w\n0 1 2.5\n\n#comment\n1 2\n  2 0 0.5  \n");
  const auto edges = read_edge_list(in);
  REQUIRE(edges.size() == 3);
  CHECK(edges[0] == Edge{0, 1, 2.5});
  CHECK(edges[1] == Edge{1, 2, 1.0});
  CHECK(edges[2] == Edge{2, 0, 0.5});
}

TEST_CASE("read_edge_list: malformed lines report their line number") {
  std::istringstream bad_token("0 1 1\n0 x 1\n");
  CHECK_THROWS_WITH_AS(read_edge_list(bad_token), doctest::Contains("line 2"), ParseError);
  std::istringstream negative("0 1 -2\n");
  CHECK_THROWS_WITH_AS(read_edge_list(negative), doctest::Contains("nonpositive weight"), ParseError);
  std::istringstream self_loop("\n3 3 1\n");
  try {
    read_edge_list(self_loop);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream extra("0 1 1 7\n");
  CHECK_THROWS_AS(read_edge_list(extra), ParseError);
  std::istringstream negative_id("-1 2\n");
  CHECK_THROWS_AS(read_edge_list(negative_id), ParseError);
}

TEST_CASE("read_edge_list_file: missing file") {
  CHECK_THROWS_AS(read_edge_list_file(scratch_dir() / "does_not_exist.tsv"), InvalidInput);
}

TEST_CASE("edge list round trip is exact") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = pt::random_graph(15, 0.2, seed, 0.1, 7.0);
    std::stringstream buf;
    write_edge_list(buf, g);
    const auto edges = read_edge_list(buf);
    const auto h = build_graph(edges, DuplicatePolicy::error, g.node_count());
    CHECK(h.edges() == g.edges());
  }
}

TEST_CASE("node attributes round trip and validation") {
  std::mt19937_64 rng(2);
  NodeAttributes a{pt::uniform_vector(rng, 6, 0.1, 4.0), pt::uniform_vector(rng, 6, 0.0, 1.0)};
  std::stringstream buf;
  write_node_attributes(buf, a);
  const auto b = read_node_attributes(buf, 6);
  CHECK(b.kappa == a.kappa);
  CHECK(b.beta == a.beta);

  std::istringstream missing("0 1 1\n1 1 0\n");
  CHECK_THROWS_WITH_AS(read_node_attributes(missing, 3), doctest::Contains("2"), ParseError);
  std::istringstream repeated("0 1 1\n0 1 0\n1 1 1\n");
  CHECK_THROWS_WITH_AS(read_node_attributes(repeated, 2), doctest::Contains("line 2"), ParseError);
  std::istringstream bad_kappa("0 0 1\n");
  CHECK_THROWS_AS(read_node_attributes(bad_kappa, 1), ParseError);
  std::istringstream bad_beta("0 1 1.5\n");
  CHECK_THROWS_AS(read_node_attributes(bad_beta, 1), ParseError);
  std::istringstream out_of_range("3 1 1\n");
  CHECK_THROWS_AS(read_node_attributes(out_of_range, 2), ParseError);
}

TEST_CASE("trajectory csv layout") {
  Trajectory t;
  t.times = {0.0, 0.5};
  t.states = {Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(0.25, 0.75)};
  std::ostringstream out;
  write_trajectory_csv(out, t);
  std::istringstream lines(out.str());
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(header == "t,x_0,x_1");
  CHECK(first == "0,0,1");
  CHECK(second == "0.5,0.25,0.75");
}

TEST_CASE("write_file_atomic replaces the target and leaves no temp file") {
  const auto dir = scratch_dir() / "atomic";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto target = dir / "report.json";
  write_file_atomic(target, "first");
  write_file_atomic(target, "second");
  std::ifstream in(target);
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(body == "second");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 1);
  CHECK_THROWS(write_file_atomic(dir / "missing_dir" / "x.json", "data"));
  CHECK_FALSE(fs::exists(dir / "missing_dir"));
}
