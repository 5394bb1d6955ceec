#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "polarnet/polarnet.hpp"

namespace polarnet::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 42;
constexpr std::size_t kMaxDistancePairsNodes = 2000;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("POLARNET_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::logic_error&) {
    }
    throw InvalidInput(std::string("POLARNET_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string output;

  void emit(const nlohmann::json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (output.empty()) out << text;
    else write_file_atomic(output, text);
  }
};

// Reads an edge list, dropping repeated pairs (first occurrence wins).
WeightedGraph load_graph(const std::string& path, const Context& ctx) {
  const auto edges = read_edge_list_file(path);
  if (const auto dup = count_duplicate_edges(edges); dup > 0)
    ctx.err << "warning: " << dup << " duplicate edge(s) in " << path << " ignored (keep-first)\n";
  return build_graph(edges, DuplicatePolicy::keep_first);
}

WeightedGraph load_connected_graph(const std::string& path, const Context& ctx) {
  auto g = load_graph(path, ctx);
  if (!g.is_connected()) throw InvalidInput("graph in " + path + " is not connected");
  return g;
}

void reject_if_set(const CLI::Option* opt, const std::string& why) {
  if (opt->count() > 0) throw InvalidInput(opt->get_name() + " is not accepted " + why);
}

nlohmann::json graph_summary(const WeightedGraph& g) {
  return {{"nodes", g.node_count()}, {"edges", g.edge_count()}, {"total_weight", g.total_weight()}};
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string edges;
  std::string model = "fd";
  std::size_t s0 = 0;
  std::size_t s1 = 0;
  double rho = 0.5;
  std::string nodes;
  double kappa = 1.0;
  double prob_zero = 0.35;
  std::uint64_t seed = kDefaultSeed;
  std::string edge_csv;
  std::string trajectory;
  double horizon = 50.0;
  double dt = 0.0;
  CLI::Option* s0_opt = nullptr;
  CLI::Option* s1_opt = nullptr;
  CLI::Option* nodes_opt = nullptr;
  CLI::Option* kappa_opt = nullptr;
  CLI::Option* prob_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void write_edge_csv(const std::string& path, const WeightedGraph& g, const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << "u,v,w,disagreement\n";
  for (const auto& e : g.edges()) {
    const double gap = x(static_cast<Eigen::Index>(e.u)) - x(static_cast<Eigen::Index>(e.v));
    os << e.u << ',' << e.v << ',' << e.w << ',' << e.w * gap * gap << '\n';
  }
  write_file_atomic(path, os.str());
}

void write_trajectory(const std::string& path, const Trajectory& t) {
  std::ostringstream os;
  write_trajectory_csv(os, t);
  write_file_atomic(path, os.str());
}

int run_analyze(const AnalyzeArgs& a, const Context& ctx) {
  if (a.model != "fd" && a.model != "fj") throw InvalidInput("--model must be fd or fj");
  auto g = load_connected_graph(a.edges, ctx);
  nlohmann::json j;
  Eigen::VectorXd x;
  std::optional<Trajectory> traj;
  TrajectoryOptions topt;
  topt.horizon = a.horizon;
  topt.dt = a.dt;

  if (a.model == "fd") {
    for (auto* o : {a.nodes_opt, a.kappa_opt, a.prob_opt, a.seed_opt}) reject_if_set(o, "for --model fd");
    if (a.s0_opt->count() == 0 || a.s1_opt->count() == 0) throw InvalidInput("--model fd requires --s0 and --s1");
    if (a.s0 == a.s1) throw InvalidInput("leaders must differ");
    const FdModel m(g, a.s0, a.s1);
    const IndexReport r = fd_report(m, a.rho);
    x = fd_steady_state(m).opinions;
    const LaplacianKit kit(g);
    j = to_json(r);
    j["s0"] = a.s0;
    j["s1"] = a.s1;
    j["resistance"] = resistance_distance(kit, a.s0, a.s1);
    j["biharmonic"] = biharmonic_distance(kit, a.s0, a.s1);
    j["closed_form"] = {{"disagreement", fd_disagreement_closed(kit, a.s0, a.s1)},
                        {"polarization", fd_polarization_closed(kit, a.s0, a.s1)}};
    j["twins_of_s0"] = nlohmann::json::array();
    for (const auto& t : detect_twins(g, a.s0)) j["twins_of_s0"].push_back(to_json(t));
    if (!a.trajectory.empty()) traj = simulate_trajectory(m, topt);
  } else {
    for (auto* o : {a.s0_opt, a.s1_opt}) reject_if_set(o, "for --model fj");
    Eigen::VectorXd kappa, beta;
    if (!a.nodes.empty()) {
      for (auto* o : {a.kappa_opt, a.prob_opt, a.seed_opt}) reject_if_set(o, "together with --nodes");
      auto attrs = read_node_attributes_file(a.nodes, g.node_count());
      kappa = std::move(attrs.kappa);
      beta = std::move(attrs.beta);
    } else {
      kappa = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.node_count()), a.kappa);
      beta = generate_random_beta(g.node_count(), a.prob_zero, a.seed);
    }
    const FjModel m(g, kappa, beta);
    const IndexReport r = fj_report(m, a.rho);
    x = fj_steady_state(m).opinions;
    j = to_json(r);
    if (a.rho == 0.5) j["closed_form"] = {{"index", fj_index_closed(m)}};
    j["beta"] = to_vector(beta);
    if (!a.trajectory.empty()) traj = simulate_trajectory(m, topt);
  }
  j["graph"] = graph_summary(g);
  j["steady_state"] = to_vector(x);
  if (!a.edge_csv.empty()) write_edge_csv(a.edge_csv, g, x);
  if (traj) write_trajectory(a.trajectory, *traj);
  ctx.emit(j);
  return kExitOk;
}

// -------------------------------------------------------------- distances

struct DistanceArgs {
  std::string edges;
  std::size_t u = 0;
  std::size_t v = 0;
  CLI::Option* u_opt = nullptr;
  CLI::Option* v_opt = nullptr;
};

int run_distances(const DistanceArgs& a, const Context& ctx) {
  const auto g = load_connected_graph(a.edges, ctx);
  if ((a.u_opt->count() > 0) != (a.v_opt->count() > 0)) throw InvalidInput("--u and --v must be given together");
  const LaplacianKit kit(g);
  nlohmann::json pairs = nlohmann::json::array();
  auto add = [&](NodeId u, NodeId v) {
    pairs.push_back({{"u", u}, {"v", v}, {"resistance", resistance_distance(kit, u, v)},
                     {"biharmonic", biharmonic_distance(kit, u, v)}});
  };
  if (a.u_opt->count() > 0) {
    if (a.u >= g.node_count() || a.v >= g.node_count()) throw InvalidInput("node id out of range");
    add(a.u, a.v);
  } else {
    if (g.node_count() > kMaxDistancePairsNodes)
      throw InvalidInput("all-pairs output limited to " + std::to_string(kMaxDistancePairsNodes) + " nodes; pass --u/--v");
    for (NodeId u = 0; u < g.node_count(); ++u)
      for (NodeId v = u + 1; v < g.node_count(); ++v) add(u, v);
  }
  ctx.emit({{"graph", graph_summary(g)}, {"pairs", std::move(pairs)}});
  return kExitOk;
}

// ---------------------------------------------------------- select-leader

struct SelectArgs {
  std::string edges;
  std::size_t s0 = 0;
  double rho = 0.5;
};

int run_select(const SelectArgs& a, const Context& ctx) {
  const auto g = load_connected_graph(a.edges, ctx);
  const auto choice = select_leader(g, a.s0, a.rho);
  nlohmann::json j = to_json(choice);
  j["s0"] = a.s0;
  j["rho"] = a.rho;
  j["twins_of_s0"] = nlohmann::json::array();
  for (const auto& t : detect_twins(g, a.s0)) j["twins_of_s0"].push_back(to_json(t));
  ctx.emit(j);
  return kExitOk;
}

// ---------------------------------------------------------- design-sparse

struct SparseArgs {
  RobustDesignOptions opt;
  std::string graph_out;
};

int run_sparse(const SparseArgs& a, const Context& ctx) {
  const auto design = design_robust_graph(a.opt);
  nlohmann::json j = to_json(design);
  j["k"] = a.opt.max_edges;
  j["budget"] = a.opt.weight_budget;
  j["seed"] = a.opt.seed;
  if (!a.graph_out.empty()) {
    std::ostringstream os;
    write_edge_list(os, design.graph);
    write_file_atomic(a.graph_out, os.str());
  }
  ctx.emit(j);
  return kExitOk;
}

// --------------------------------------------------------- design-weights

struct WeightArgs {
  std::string edges;
  std::string nodes;
  WeightBounds bounds;
  SolverOptions solver;
  std::string graph_out;
};

int run_weights(const WeightArgs& a, const Context& ctx) {
  const auto g = load_connected_graph(a.edges, ctx);
  const auto attrs = read_node_attributes_file(a.nodes, g.node_count());
  const auto design = optimize_weights(g, attrs.kappa, attrs.beta, a.bounds, a.solver);
  nlohmann::json j = to_json(design, g);
  j["rho"] = 0.5;
  j["lower"] = a.bounds.lower;
  j["upper"] = a.bounds.upper;
  j["budget"] = a.bounds.budget;
  if (!a.graph_out.empty()) {
    if ((design.weights.array() <= 0.0).any()) throw InvalidInput("--graph-out needs strictly positive weights (raise --lower)");
    std::ostringstream os;
    write_edge_list(os, with_weights(g, std::span<const double>(design.weights.data(), static_cast<std::size_t>(design.weights.size()))));
    write_file_atomic(a.graph_out, os.str());
  }
  ctx.emit(j);
  return kExitOk;
}

// ------------------------------------------------------------- flip-prefs

struct FlipArgs {
  std::string edges;
  std::string nodes;
  double lambda = 0.0;
  std::size_t k = 0;
  double rho = 0.5;
  std::size_t baseline_trials = 0;
  std::uint64_t seed = kDefaultSeed;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

int run_flip(const FlipArgs& a, const Context& ctx) {
  if ((a.lambda_opt->count() > 0) == (a.k_opt->count() > 0)) throw InvalidInput("flip-prefs needs exactly one of --lambda or --k");
  if (a.baseline_trials == 0) reject_if_set(a.seed_opt, "without --baseline-trials");
  const auto g = load_connected_graph(a.edges, ctx);
  const auto attrs = read_node_attributes_file(a.nodes, g.node_count());
  const FlipPlan plan = a.lambda_opt->count() > 0
                            ? flip_preferences_l1(g, attrs.kappa, attrs.beta, a.lambda, a.rho)
                            : flip_preferences_budget(g, attrs.kappa, attrs.beta, a.k, a.rho);
  nlohmann::json j = to_json(plan);
  if (a.baseline_trials > 0) {
    j["random_baseline"] = to_json(random_flip_baseline(g, attrs.kappa, attrs.beta, plan.flipped.size(), a.baseline_trials, a.seed, a.rho));
    j["seed"] = a.seed;
  }
  ctx.emit(j);
  return kExitOk;
}

// ------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string edges;
  std::size_t random_nodes = 50;
  std::size_t random_edges = 0;
  ExperimentConfig config;
  std::string csv;
  CLI::Option* random_nodes_opt = nullptr;
  CLI::Option* random_edges_opt = nullptr;
};

int run_experiment(ExperimentArgs a, const Context& ctx) {
  WeightedGraph g;
  nlohmann::json source;
  if (!a.edges.empty()) {
    reject_if_set(a.random_nodes_opt, "together with --edges");
    reject_if_set(a.random_edges_opt, "together with --edges");
    const auto raw = load_graph(a.edges, ctx);
    g = prepare_experiment_graph(raw);
    source = {{"edges_file", a.edges}, {"input_nodes", raw.node_count()}, {"input_edges", raw.edge_count()}};
  } else {
    const std::size_t m = a.random_edges > 0
                              ? a.random_edges
                              : static_cast<std::size_t>(std::lround(kHaggleAverageDegree * static_cast<double>(a.random_nodes) / 2.0));
    g = random_connected_graph(a.random_nodes, std::min(m, a.random_nodes * (a.random_nodes - 1) / 2), a.config.seed);
    source = {{"random_graph", true}, {"graph_seed", a.config.seed}};
  }
  const auto report = run_flip_experiment(g, a.config);
  nlohmann::json j = to_json(report);
  j["source"] = source;
  j["lambda_min"] = a.config.lambda_min;
  j["lambda_max"] = a.config.lambda_max;
  j["random_trials"] = a.config.random_trials;
  if (!a.csv.empty()) write_file_atomic(a.csv, experiment_csv(report));
  ctx.emit(j);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"polarnet: disagreement and polarization in two-party opinion networks"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "Write the JSON report to this file instead of stdout");

  std::uint64_t seed = kDefaultSeed;
  try {
    seed = default_seed();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  AnalyzeArgs an;
  an.seed = seed;
  auto* analyze = app.add_subcommand("analyze", "Steady state, disagreement and polarization of one instance");
  analyze->add_option("--edges", an.edges, "Edge list file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--model", an.model, "fd (French-DeGroot) or fj (Friedkin-Johnsen)")->check(CLI::IsMember({"fd", "fj"}));
  an.s0_opt = analyze->add_option("--s0", an.s0, "Leader for opinion 0 (fd)");
  an.s1_opt = analyze->add_option("--s1", an.s1, "Leader for opinion 1 (fd)");
  analyze->add_option("--rho", an.rho, "Weight of disagreement in the index")->check(CLI::Range(0.0, 1.0));
  an.nodes_opt = analyze->add_option("--nodes", an.nodes, "Node attribute file 'v kappa beta' (fj)")->check(CLI::ExistingFile);
  an.kappa_opt = analyze->add_option("--kappa", an.kappa, "Uniform susceptibility when --nodes is absent (fj)");
  an.prob_opt = analyze->add_option("--prob-zero", an.prob_zero, "P(beta_v = 0) when --nodes is absent (fj)")->check(CLI::Range(0.0, 1.0));
  an.seed_opt = analyze->add_option("--seed", an.seed, "Seed for generated preferences (fj)");
  analyze->add_option("--edge-csv", an.edge_csv, "Write per-edge disagreement CSV");
  analyze->add_option("--trajectory", an.trajectory, "Write an RK4 trajectory CSV (t, x_0..x_{n-1})");
  analyze->add_option("--horizon", an.horizon, "Trajectory horizon");
  analyze->add_option("--dt", an.dt, "Trajectory step (default 0.5 / max diagonal)");

  DistanceArgs di;
  auto* distances = app.add_subcommand("distances", "Resistance and biharmonic distances");
  distances->add_option("--edges", di.edges, "Edge list file")->required()->check(CLI::ExistingFile);
  di.u_opt = distances->add_option("--u", di.u, "First node of a single pair");
  di.v_opt = distances->add_option("--v", di.v, "Second node of a single pair");

  SelectArgs se;
  auto* select = app.add_subcommand("select-leader", "Best opposing leader for a fixed s0");
  select->add_option("--edges", se.edges, "Edge list file")->required()->check(CLI::ExistingFile);
  select->add_option("--s0", se.s0, "Leader for opinion 0")->required();
  select->add_option("--rho", se.rho, "Weight of disagreement in the index")->check(CLI::Range(0.0, 1.0));

  SparseArgs sp;
  sp.opt.seed = seed;
  auto* sparse = app.add_subcommand("design-sparse", "Sparse topology with near-minimal polarization for every leader pair");
  sparse->add_option("--n", sp.opt.node_count, "Number of nodes")->required();
  sparse->add_option("--k", sp.opt.max_edges, "Maximum edge count")->required();
  sparse->add_option("--budget", sp.opt.weight_budget, "Total weight budget W")->required();
  sparse->add_option("--epsilon", sp.opt.epsilon, "Requested spectral approximation epsilon");
  sparse->add_option("--seed", sp.opt.seed, "Sampling seed");
  sparse->add_option("--scale", sp.opt.scale, "Extra uniform weight factor in (0, 1]; lowers D, keeps P");
  sparse->add_option("--sampling-constant", sp.opt.sampling_constant, "C in q = C n ln n / eps^2");
  sparse->add_option("--graph-out", sp.graph_out, "Write the designed graph as an edge list");

  WeightArgs we;
  auto* weights = app.add_subcommand("design-weights", "Convex edge-weight design minimizing I~(1/2)");
  weights->add_option("--edges", we.edges, "Edge list file (topology)")->required()->check(CLI::ExistingFile);
  weights->add_option("--nodes", we.nodes, "Node attribute file 'v kappa beta'")->required()->check(CLI::ExistingFile);
  weights->add_option("--lower", we.bounds.lower, "Lower weight bound")->required();
  weights->add_option("--upper", we.bounds.upper, "Upper weight bound")->required();
  weights->add_option("--budget", we.bounds.budget, "Total weight budget W")->required();
  weights->add_option("--tol", we.solver.gradient_tolerance, "Projected-gradient tolerance");
  weights->add_option("--max-iter", we.solver.max_iterations, "Iteration cap");
  weights->add_option("--graph-out", we.graph_out, "Write the weighted graph as an edge list");

  FlipArgs fl;
  fl.seed = seed;
  auto* flip = app.add_subcommand("flip-prefs", "Choose preferences to flip (l1 relaxation or top-k budget relaxation)");
  flip->add_option("--edges", fl.edges, "Edge list file")->required()->check(CLI::ExistingFile);
  flip->add_option("--nodes", fl.nodes, "Node attribute file 'v kappa beta'")->required()->check(CLI::ExistingFile);
  fl.lambda_opt = flip->add_option("--lambda", fl.lambda, "l1 regularization weight");
  fl.k_opt = flip->add_option("--k", fl.k, "Flip budget (top-k of the budget relaxation)");
  flip->add_option("--rho", fl.rho, "Weight of disagreement in the index")->check(CLI::Range(0.0, 1.0));
  flip->add_option("--baseline-trials", fl.baseline_trials, "Also report k random flips over this many trials");
  fl.seed_opt = flip->add_option("--seed", fl.seed, "Seed for the random baseline");

  ExperimentArgs ex;
  ex.config.seed = seed;
  auto* experiment = app.add_subcommand("experiment", "Lambda sweep comparing l1, top-k and random flips");
  experiment->add_option("--edges", ex.edges, "Edge list file (LCC is extracted, duplicates dropped)")->check(CLI::ExistingFile);
  ex.random_nodes_opt = experiment->add_option("--random-nodes", ex.random_nodes, "Node count of a generated graph when --edges is absent");
  ex.random_edges_opt = experiment->add_option("--random-edges", ex.random_edges, "Edge count of the generated graph (default: Haggle density)");
  experiment->add_option("--prob-zero", ex.config.prob_zero, "P(beta_v = 0)")->check(CLI::Range(0.0, 1.0));
  experiment->add_option("--kappa", ex.config.kappa, "Uniform susceptibility");
  experiment->add_option("--rho", ex.config.rho, "Weight of disagreement in the index")->check(CLI::Range(0.0, 1.0));
  experiment->add_option("--lambda-min", ex.config.lambda_min, "Smallest lambda");
  experiment->add_option("--lambda-max", ex.config.lambda_max, "Largest lambda");
  experiment->add_option("--lambda-points", ex.config.lambda_points, "Number of lambda values (geometric grid)");
  experiment->add_option("--trials", ex.config.random_trials, "Random-flip trials per lambda");
  experiment->add_option("--seed", ex.config.seed, "Seed for beta, the generated graph and the random baseline");
  experiment->add_option("--csv", ex.csv, "Write the comparison table as CSV");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("polarnet");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Context ctx{out, err, output};
  try {
    if (analyze->parsed()) return run_analyze(an, ctx);
    if (distances->parsed()) return run_distances(di, ctx);
    if (select->parsed()) return run_select(se, ctx);
    if (sparse->parsed()) return run_sparse(sp, ctx);
    if (weights->parsed()) return run_weights(we, ctx);
    if (flip->parsed()) return run_flip(fl, ctx);
    if (experiment->parsed()) return run_experiment(ex, ctx);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EpsilonUnattainable& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace polarnet::cli
