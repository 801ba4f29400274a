// willtest: density tables, equilibrium verification, population dynamics,
// and strategy-guarantee reports for the will-testing game.
//
// Exit codes: 0 success, 1 validation error, 2 check failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "willtest/report.hpp"

namespace {

using namespace willtest;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

struct DensityArgs {
  std::vector<double> rhos;
  double horizon = 1.0;
  int grid = 512;
  double clip = 0.0;  // 0 = 10x the left-endpoint density, per curve
  std::string out;
  std::string svg;
};

int run_density(const DensityArgs& a) {
  std::vector<double> rhos = a.rhos;
  if (rhos.empty()) rhos = {0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.8};
  for (double rho : rhos) validate_params(rho, a.horizon);
  const DensityTable table = make_density_table(rhos, a.horizon, a.grid, a.clip);
  emit(a.out, density_csv(table));
  if (!a.svg.empty()) write_text(a.svg, density_svg(table));
  return 0;
}

struct VerifyArgs {
  std::vector<double> rhos;
  double horizon = 1.0;
  int panels = 4096;
  double tail = 0.01;
  VerifyOptions tols;  // only the *_tol fields are used
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions opts = a.tols;
  opts.rhos = a.rhos;
  if (opts.rhos.empty()) {
    for (int i = 1; i <= 19; ++i) opts.rhos.push_back(i * 0.05);
  }
  for (double rho : opts.rhos) validate_params(rho, a.horizon);
  opts.horizon = a.horizon;
  opts.quad = QuadratureSpec{a.panels, a.tail};
  const VerifyReport report = run_verification(opts);
  emit(a.out, to_json(report).dump(2) + "\n");
  return report.overall_pass ? 0 : 2;
}

struct SimulateArgs {
  double rho = 0.5;
  double horizon = 1.0;
  int n = 100;
  int rounds = 100;
  std::uint64_t seed = 42;
  double epsilon = 1e-9;
  std::string observe = "full";
  std::string graph = "complete";
  std::string init = "equilibrium";
  double init_value = -1.0;  // default horizon / 2 for --init equal
  int revisions = 1;
  bool simultaneous = false;
  std::string out;
  std::string summary;
};

int run_simulate(const SimulateArgs& a) {
  validate_params(a.rho, a.horizon);
  const GameParams params{a.rho, a.horizon};

  InteractionGraph graph = a.graph == "complete"
                               ? InteractionGraph::complete(a.n)
                               : load_graph(a.graph);
  if (graph.size() != a.n && a.graph != "complete") {
    throw std::invalid_argument("graph file has " +
                                std::to_string(graph.size()) +
                                " players, --n says " + std::to_string(a.n));
  }

  const EquilibriumDensity limit(params);
  std::vector<double> strategies;
  if (a.init == "equal") {
    const double v = a.init_value < 0.0 ? a.horizon / 2.0 : a.init_value;
    strategies = equal_strategies(a.n, v, params);
  } else if (a.init == "uniform") {
    strategies = uniform_strategies(a.n, params, a.seed);
  } else if (a.init == "equilibrium") {
    strategies = limit.sample(a.n, a.seed);
  } else {
    strategies = load_strategies(a.init, a.n, params);
  }

  RevisionPolicy policy;
  policy.epsilon = a.epsilon;
  if (a.observe == "full") {
    policy.observe_k = 0;
  } else {
    try {
      policy.observe_k = std::stoi(a.observe);
    } catch (const std::exception&) {
      throw std::invalid_argument("--observe must be \"full\" or an integer");
    }
    if (policy.observe_k < 1) {
      throw std::invalid_argument("--observe k must be >= 1");
    }
  }
  policy.revisions_per_round = a.revisions;
  policy.simultaneous = a.simultaneous;

  PopulationState state = make_population(std::move(strategies),
                                          std::move(graph), params, a.seed);
  validate_policy(policy, state);
  const SimReport report = run(state, policy, a.rounds, limit);
  const EquilibriumCheck check = is_pure_equilibrium(state, a.epsilon, 1e-9);

  if (!a.out.empty()) write_text(a.out, simulation_csv(report));
  const std::string summary =
      simulation_summary(report, state, check).dump(2) + "\n";
  if (a.out.empty() && a.summary.empty()) {
    // both streams to stdout: CSV first, then the summary object
    std::cout << simulation_csv(report);
  }
  emit(a.summary, summary);
  return 0;
}

struct AnalyzeArgs {
  double rho = 0.5;
  double horizon = 1.0;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 42;
  int s_grid = 11;
  std::string out;
};

int run_analyze(const AnalyzeArgs& a) {
  AnalyzeOptions opts;
  opts.params = GameParams{a.rho, a.horizon};
  opts.samples = static_cast<std::size_t>(a.samples);
  opts.seed = a.seed;
  opts.s_grid_points = a.s_grid;
  emit(a.out, analyze_json(opts).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "will-testing game toolkit: equilibrium densities, verification, "
      "population dynamics, strategy guarantees"};
  app.require_subcommand(1);

  DensityArgs da;
  auto* density = app.add_subcommand(
      "density", "Tabulate equilibrium densities as CSV, optionally plot SVG");
  density->add_option("--rho", da.rhos,
                      "Winner share in (0,1); repeatable "
                      "(default 0.2 1/3 0.5 2/3 0.8)");
  density->add_option("--big-t", da.horizon, "Horizon T > 0")
      ->capture_default_str();
  density->add_option("--grid", da.grid, "Grid points on [0, T]")
      ->capture_default_str();
  density->add_option("--clip", da.clip,
                      "SVG clip ceiling (default: 10x density at s=0)");
  density->add_option("--out", da.out, "CSV path (default stdout)");
  density->add_option("--svg", da.svg, "SVG path (no plot if omitted)");

  VerifyArgs va;
  auto* verify = app.add_subcommand(
      "verify", "Check the equilibrium density against its defining identities");
  verify->add_option("--rho", va.rhos,
                     "Winner share in (0,1); repeatable "
                     "(default 0.05, 0.10, ..., 0.95)");
  verify->add_option("--big-t", va.horizon, "Horizon T > 0")
      ->capture_default_str();
  verify->add_option("--panels", va.panels, "Simpson panels")
      ->capture_default_str();
  verify->add_option("--tail", va.tail,
                     "Closed-form tail window as a fraction of T")
      ->capture_default_str();
  verify->add_option("--norm-tol", va.tols.norm_tol, "Normalization tolerance")
      ->capture_default_str();
  verify->add_option("--pay-tol", va.tols.pay_tol,
                     "Constant-pay tolerance (times T)")
      ->capture_default_str();
  verify->add_option("--residual-tol", va.tols.residual_tol,
                     "Analytic residual tolerance")
      ->capture_default_str();
  verify->add_option("--fd-tol", va.tols.fd_rel_tol,
                     "Finite-difference relative tolerance")
      ->capture_default_str();
  verify->add_option("--roundtrip-tol", va.tols.roundtrip_tol,
                     "CDF round-trip tolerance")
      ->capture_default_str();
  verify->add_option("--out", va.out, "JSON path (default stdout)");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand(
      "simulate", "Run best-response population dynamics");
  simulate->add_option("--rho", sa.rho, "Winner share in (0,1)")
      ->capture_default_str();
  simulate->add_option("--big-t", sa.horizon, "Horizon T > 0")
      ->capture_default_str();
  simulate->add_option("--n", sa.n, "Number of players")
      ->capture_default_str();
  simulate->add_option("--rounds", sa.rounds, "Revision rounds")
      ->capture_default_str();
  simulate->add_option("--seed", sa.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--epsilon", sa.epsilon,
                       "Outbid offset; also the churn threshold")
      ->capture_default_str();
  simulate->add_option("--observe", sa.observe,
                       "\"full\" or k = sampled neighbors per revision")
      ->capture_default_str();
  simulate->add_option("--graph", sa.graph, "\"complete\" or a graph file path")
      ->capture_default_str();
  simulate->add_option("--init", sa.init,
                       "equal | uniform | equilibrium | strategy file path")
      ->capture_default_str();
  simulate->add_option("--init-value", sa.init_value,
                       "Common strategy for --init equal (default T/2)");
  simulate->add_option("--revisions", sa.revisions, "Revising players per round")
      ->capture_default_str();
  simulate->add_flag("--simultaneous", sa.simultaneous,
                     "Apply all revisions of a round at once");
  simulate->add_option("--out", sa.out, "Per-round CSV path (default stdout)");
  simulate->add_option("--summary", sa.summary,
                       "JSON summary path (default stdout)");

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand(
      "analyze", "Report closed-form strategy guarantees vs Monte Carlo");
  analyze->add_option("--rho", aa.rho, "Winner share in (0,1)")
      ->capture_default_str();
  analyze->add_option("--big-t", aa.horizon, "Horizon T > 0")
      ->capture_default_str();
  analyze->add_option("--samples", aa.samples, "Monte Carlo draws per scenario")
      ->capture_default_str();
  analyze->add_option("--seed", aa.seed, "RNG seed")->capture_default_str();
  analyze->add_option("--s-grid", aa.s_grid,
                      "Fixed-strategy grid points on [0, T]")
      ->capture_default_str();
  analyze->add_option("--out", aa.out, "JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 1;
  }

  try {
    if (density->parsed()) return run_density(da);
    if (verify->parsed()) return run_verify(va);
    if (simulate->parsed()) return run_simulate(sa);
    return run_analyze(aa);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
