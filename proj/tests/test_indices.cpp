#include <doctest.h>

#include "support.hpp"

using namespace polarnet;
namespace pt = polarnet::testing;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

FjModel random_fj(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  auto g = pt::random_graph(n, 0.3, seed, 0.2, 3.0);
  return FjModel(std::move(g), pt::uniform_vector(rng, n, 0.2, 4.0), pt::uniform_vector(rng, n, 0.0, 1.0));
}

}  // namespace

TEST_CASE("disagreement examples") {
  const auto path = path_graph(3);
  CHECK(disagreement(path, Eigen::VectorXd::Constant(3, 0.7)) == 0.0);
  CHECK(disagreement(path, vec({0, 0.5, 1})) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(disagreement(complete_graph(2), vec({2.0 / 3, 1.0 / 3})) == doctest::Approx(1.0 / 9).epsilon(1e-14));
  const auto g = pt::random_graph(12, 0.3, 4, 0.1, 2.0);
  std::mt19937_64 rng(4);
  const auto x = pt::uniform_vector(rng, 12, 0.0, 1.0);
  CHECK(pt::relative_error(disagreement(g, x), disagreement_quadratic(laplacian_matrix(g), x)) < 1e-12);
  CHECK_THROWS_AS(disagreement(g, vec({1, 2})), InvalidInput);
}

TEST_CASE("polarization examples") {
  CHECK(polarization(Eigen::VectorXd::Constant(4, 0.3)) == doctest::Approx(0.0));
  CHECK(polarization(vec({0, 0.5, 1})) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(polarization(vec({2.0 / 3, 1.0 / 3})) == doctest::Approx(1.0 / 18).epsilon(1e-14));
}

TEST_CASE("weighted polarization examples") {
  const auto w = weighted_polarization(vec({1, 0}), vec({1, 3}));
  CHECK(w.alpha == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w.value == doctest::Approx(0.75).epsilon(1e-15));
  const auto c = weighted_polarization(Eigen::VectorXd::Constant(3, 0.4), vec({1, 2, 5}));
  CHECK(c.value == doctest::Approx(0.0));
  CHECK(c.alpha == doctest::Approx(0.4));
  std::mt19937_64 rng(8);
  const auto x = pt::uniform_vector(rng, 7, 0.0, 1.0);
  const auto u = weighted_polarization(x, Eigen::VectorXd::Constant(7, 2.5));
  CHECK(u.alpha == doctest::Approx(x.mean()).epsilon(1e-14));
  CHECK(u.value == doctest::Approx(2.5 * polarization(x)).epsilon(1e-13));
  const auto kappa = pt::uniform_vector(rng, 7, 0.1, 3.0);
  CHECK(pt::relative_error(weighted_polarization(x, kappa).value, weighted_polarization_quadratic(x, kappa)) < 1e-12);
}

TEST_CASE("pd_index") {
  CHECK(pd_index(0.3, 0.9, 1.0) == 0.3);
  CHECK(pd_index(0.3, 0.9, 0.0) == 0.9);
  CHECK(pd_index(1.0 / 9, 1.0 / 18, 0.5) == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK_THROWS_AS(pd_index(1, 1, 1.5), InvalidInput);
}

TEST_CASE("FD closed-form disagreement") {
  CHECK(fd_disagreement_closed(LaplacianKit(path_graph(3)), 0, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fd_disagreement_closed(LaplacianKit(complete_graph(5)), 1, 3) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(fd_disagreement_closed(LaplacianKit(WeightedGraph(2, {{0, 1, 3.5}})), 0, 1) == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("FD closed-form polarization") {
  CHECK(fd_polarization_closed(LaplacianKit(path_graph(3)), 0, 2) == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t n : {3, 7, 12}) {
    const LaplacianKit kit(complete_graph(n));
    CHECK(fd_polarization_closed(kit, 0, n - 1) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("barbell: cross-clique values from the voltage oracle") {
  // q = 5: the bridge endpoints sit at +-1/2 and the other q-2 nodes per clique at
  // +-(1/2 + 1/q), giving P = 253/162.
  const auto g = pt::barbell(5);
  const LaplacianKit kit(g);
  const auto oracle = pt::oracle_fd(g, 1, 6);
  CHECK(oracle.polarization == doctest::Approx(253.0 / 162.0).epsilon(1e-12));
  CHECK(fd_polarization_closed(kit, 1, 6) == doctest::Approx(253.0 / 162.0).epsilon(1e-12));
  CHECK(fd_disagreement_closed(kit, 1, 6) == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
  CHECK(fd_polarization_closed(kit, 1, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fd_disagreement_closed(kit, 1, 2) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("FD closed forms agree with the definitional report") {
  std::mt19937_64 rng(3);
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 20;
    const auto g = pt::random_graph(n, 0.2, 700 + trial, 0.3, 3.0);
    const auto [s0, s1] = pt::random_pair(rng, n);
    const LaplacianKit kit(g);
    const auto r = fd_report(FdModel(g, s0, s1), 0.3);
    const auto oracle = pt::oracle_fd(g, s0, s1);
    CHECK(pt::relative_error(r.disagreement, fd_disagreement_closed(kit, s0, s1)) < 1e-8);
    CHECK(pt::relative_error(r.polarization, fd_polarization_closed(kit, s0, s1)) < 1e-8);
    CHECK(pt::relative_error(r.disagreement, oracle.disagreement) < 1e-8);
    CHECK(pt::relative_error(r.polarization, oracle.polarization) < 1e-8);
    CHECK(r.index == doctest::Approx(0.3 * r.disagreement + 0.7 * r.polarization));
    CHECK(r.model == "fd");
    CHECK_FALSE(r.weighted_polarization.has_value());
  }
}

TEST_CASE("FD lower bound on P, exhaustive over small graphs") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (const auto& g : pt::all_connected_graphs(n)) {
      const LaplacianKit kit(g);
      for (NodeId s0 = 0; s0 < n; ++s0)
        for (NodeId s1 = 0; s1 < n; ++s1)
          if (s0 != s1) CHECK(fd_polarization_closed(kit, s0, s1) >= 0.5 - 1e-9);
    }
}

TEST_CASE("FD scale invariance") {
  const auto g = pt::random_graph(10, 0.3, 14, 0.5, 2.0);
  const LaplacianKit base(g);
  for (double a : {0.1, 2.0, 10.0}) {
    const LaplacianKit scaled(scale_weights(g, a));
    CHECK(std::abs(fd_polarization_closed(scaled, 2, 7) - fd_polarization_closed(base, 2, 7)) < 1e-9);
    CHECK(std::abs(fd_disagreement_closed(scaled, 2, 7) - a * fd_disagreement_closed(base, 2, 7)) < 1e-9 * a);
  }
}

TEST_CASE("FJ two-node example") {
  const FjModel m(complete_graph(2), vec({1, 1}), vec({1, 0}));
  CHECK((fj_centered_source(m) - vec({0.5, -0.5})).norm() < 1e-15);
  CHECK(fj_index_closed(m) == doctest::Approx(1.0 / 12).epsilon(1e-12));
  const auto r = fj_report(m, 0.5);
  CHECK(r.disagreement == doctest::Approx(1.0 / 9).epsilon(1e-12));
  CHECK(*r.weighted_polarization == doctest::Approx(1.0 / 18).epsilon(1e-12));
  CHECK(r.index == doctest::Approx(1.0 / 12).epsilon(1e-12));
  CHECK(*r.alpha == doctest::Approx(0.5));
}

TEST_CASE("FJ uniform preferences give a zero index") {
  const auto g = pt::random_graph(8, 0.3, 2);
  std::mt19937_64 rng(2);
  const auto kappa = pt::uniform_vector(rng, 8, 0.5, 2.0);
  for (double b : {0.0, 1.0, 0.3}) {
    const FjModel m(g, kappa, Eigen::VectorXd::Constant(8, b));
    CHECK(fj_centered_source(m).norm() < 1e-12);
    CHECK(std::abs(fj_index_closed(m)) < 1e-12);
  }
}

TEST_CASE("FJ closed form rejects rho other than one half") {
  CHECK_THROWS_AS(fj_index_closed(random_fj(1, 5), 0.3), InvalidInput);
}

TEST_CASE("FJ definitional, quadratic and closed forms agree") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto m = random_fj(900 + seed, 3 + seed % 20);
    const auto r = fj_report(m, 0.5);
    CHECK(pt::relative_error(r.disagreement, fj_disagreement_quadratic(m)) < 1e-8);
    CHECK(pt::relative_error(*r.weighted_polarization, fj_weighted_polarization_quadratic(m)) < 1e-8);
    CHECK(pt::relative_error(r.index, fj_index_closed(m)) < 1e-8);
    CHECK(pt::relative_error(r.index, pt::oracle_fj_index(m.graph(), m.kappa(), m.beta(), 0.5)) < 1e-8);
    const auto r0 = fj_report(m, 0.0);
    CHECK(r0.index == doctest::Approx(*r0.weighted_polarization));
  }
}

TEST_CASE("FJ centering identities hold as vector equalities") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = random_fj(50 + seed, 4 + seed % 10);
    const Eigen::MatrixXd M = m.system_matrix();
    const Eigen::VectorXd s = m.source();
    const Eigen::VectorXd st = fj_centered_source(m);
    const Eigen::MatrixXd P = kappa_projector(m.kappa());
    const auto n = M.rows();
    const Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    const Eigen::VectorXd xs = M.lu().solve(s);
    const Eigen::VectorXd xt = M.lu().solve(st);
    CHECK((P * xs - xt).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((J * xs - J * xt).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("FJ steady state approaches its weighted mean as the graph is scaled up") {
  const auto m = random_fj(77, 12);
  double prev = std::numeric_limits<double>::infinity();
  for (double a : {10.0, 100.0, 1000.0}) {
    const FjModel scaled(scale_weights(m.graph(), a), m.kappa(), m.beta());
    const auto x = fj_steady_state(scaled).opinions;
    const double alpha = weighted_polarization(x, m.kappa()).alpha;
    const double gap = (x.array() - alpha).abs().maxCoeff();
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-2);
}
