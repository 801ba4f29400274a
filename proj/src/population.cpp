#include "willtest/population.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "willtest/stats.hpp"

namespace willtest {

InteractionGraph InteractionGraph::complete(int n) {
  if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
  return InteractionGraph(n, true);
}

InteractionGraph InteractionGraph::from_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 2) throw std::invalid_argument("graph needs n >= 2");
  InteractionGraph g(n, false);
  g.adjacency_.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw std::invalid_argument("edge endpoint out of range: " +
                                  std::to_string(u) + " " + std::to_string(v));
    }
    if (u == v) {
      throw std::invalid_argument("self-loop at player " + std::to_string(u));
    }
    const auto key = std::minmax(u, v);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(key.first) +
                                  " " + std::to_string(key.second));
    }
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (int i = 0; i < n; ++i) {
    if (g.adjacency_[i].empty()) {
      throw std::invalid_argument("player " + std::to_string(i) +
                                  " is isolated (degree 0)");
    }
  }
  return g;
}

InteractionGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n) || tag != "n") {
    throw std::runtime_error("graph file must start with \"n <count>\": " + path);
  }
  std::vector<std::pair<int, int>> edges;
  int u, v;
  while (in >> u) {
    if (!(in >> v)) {
      throw std::runtime_error("dangling edge endpoint in graph file: " + path);
    }
    edges.emplace_back(u, v);
  }
  if (!in.eof()) {
    throw std::runtime_error("malformed token in graph file: " + path);
  }
  return InteractionGraph::from_edges(n, edges);
}

std::vector<double> load_strategies(const std::string& path, int expected_n,
                                    const GameParams& params) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open strategy file: " + path);
  std::vector<double> out;
  double x;
  while (in >> x) {
    check_strategy(x, params, "strategy");
    out.push_back(x);
  }
  if (!in.eof()) {
    throw std::runtime_error("malformed value in strategy file: " + path);
  }
  if (static_cast<int>(out.size()) != expected_n) {
    throw std::runtime_error("strategy file has " + std::to_string(out.size()) +
                             " values, expected " + std::to_string(expected_n));
  }
  return out;
}

PopulationState make_population(std::vector<double> strategies,
                                InteractionGraph graph, GameParams params,
                                std::uint64_t seed) {
  validate_params(params.rho, params.horizon);
  if (static_cast<int>(strategies.size()) != graph.size()) {
    throw std::invalid_argument("strategy count does not match graph size");
  }
  for (double s : strategies) check_strategy(s, params, "strategy");
  return PopulationState{std::move(strategies), std::move(graph), params, seed, 0};
}

std::vector<double> equal_strategies(int n, double value, const GameParams& p) {
  check_strategy(value, p, "strategy");
  return std::vector<double>(static_cast<std::size_t>(n), value);
}

std::vector<double> uniform_strategies(int n, const GameParams& p,
                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (double& s : out) s = p.horizon * uniform01(rng);
  return out;
}

void validate_policy(const RevisionPolicy& policy, const PopulationState& state) {
  const double T = state.params.horizon;
  if (!(policy.epsilon > 0.0 && policy.epsilon <= 1e-3 * T)) {
    throw std::invalid_argument("epsilon must lie in (0, 1e-3 * horizon]");
  }
  const int n = state.graph.size();
  if (policy.observe_k < 0 || policy.observe_k > n - 1) {
    throw std::invalid_argument("observe_k must be 0 (full) or in [1, n-1]");
  }
  if (policy.revisions_per_round < 0 || policy.revisions_per_round > n) {
    throw std::invalid_argument("revisions_per_round must lie in [0, n]");
  }
}

double social_pay(const PopulationState& state, int player, double candidate) {
  const int n = state.graph.size();
  if (player < 0 || player >= n) {
    throw std::invalid_argument("player index out of range");
  }
  check_strategy(candidate, state.params, "candidate");
  const int deg = state.graph.degree(player);
  if (deg == 0) throw std::invalid_argument("isolated player has no pay");
  double sum = 0.0;
  state.graph.for_each_neighbor(player, [&](int j) {
    sum += payoff(candidate, state.strategies[j], state.params).p1;
  });
  return sum / deg;
}

namespace {

// Saw-function pay from a sorted opponent list: opponents strictly below c
// are beaten for (T - t), everyone at or above c leaves the capitulator's
// share rho (T - c).
struct SortedOpponents {
  std::vector<double> values;  // ascending
  std::vector<double> win_prefix;  // win_prefix[i] = sum_{j<i} (T - values[j])

  explicit SortedOpponents(std::vector<double> vals, double horizon)
      : values(std::move(vals)) {
    std::sort(values.begin(), values.end());
    win_prefix.resize(values.size() + 1, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
      win_prefix[i + 1] = win_prefix[i] + (horizon - values[i]);
    }
  }

  double pay(double candidate, const GameParams& p) const {
    const auto lo = static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), candidate) -
        values.begin());
    const double losses = static_cast<double>(values.size() - lo) * p.rho *
                          (p.horizon - candidate);
    return (win_prefix[lo] + losses) / static_cast<double>(values.size());
  }
};

std::vector<double> observed_strategies(const PopulationState& state,
                                        int player, int observe_k, Rng& rng) {
  const int deg = state.graph.degree(player);
  std::vector<double> out;
  if (observe_k == 0 || observe_k >= deg) {
    out.reserve(deg);
    state.graph.for_each_neighbor(
        player, [&](int j) { out.push_back(state.strategies[j]); });
    return out;
  }
  const auto picks = observe_neighbors(state, player, observe_k, rng);
  out.reserve(picks.size());
  for (int j : picks) out.push_back(state.strategies[j]);
  return out;
}

BestResponse best_response_against(const std::vector<double>& observed,
                                   const PopulationState& state,
                                   double epsilon) {
  const GameParams& p = state.params;
  const SortedOpponents opp(observed, p.horizon);
  BestResponse best{0.0, opp.pay(0.0, p)};
  double last = -1.0;
  for (double t : opp.values) {
    if (t == last) continue;  // duplicate opponent value, same candidate
    last = t;
    const double c = t + epsilon;
    if (c > p.horizon) continue;
    const double pay_c = opp.pay(c, p);
    if (pay_c > best.pay) best = {c, pay_c};
  }
  return best;
}

}  // namespace

std::vector<int> observe_neighbors(const PopulationState& state, int player,
                                   int k, Rng& rng) {
  const int deg = state.graph.degree(player);
  if (k < 1 || k > deg) throw std::invalid_argument("observation size out of range");
  const auto idx = sample_without_replacement(rng, deg, k);
  std::vector<int> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out[i] = state.graph.neighbor_at(player, idx[i]);
  }
  return out;
}

std::vector<double> social_pay_all(const PopulationState& state) {
  const int n = state.graph.size();
  std::vector<double> pays(static_cast<std::size_t>(n));
  if (!state.graph.is_complete()) {
    for (int i = 0; i < n; ++i) pays[i] = social_pay(state, i, state.strategies[i]);
    return pays;
  }
  // Complete graph: one shared sort, each player's pay in O(log n).
  const GameParams& p = state.params;
  std::vector<double> sorted = state.strategies;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> win_prefix(sorted.size() + 1, 0.0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    win_prefix[i + 1] = win_prefix[i] + (p.horizon - sorted[i]);
  }
  for (int i = 0; i < n; ++i) {
    const double x = state.strategies[i];
    const auto lo = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
    const auto at_or_above = static_cast<double>(sorted.size() - lo) - 1.0;  // minus self
    pays[i] = (win_prefix[lo] + at_or_above * p.rho * (p.horizon - x)) /
              static_cast<double>(n - 1);
  }
  return pays;
}

BestResponse best_response(const PopulationState& state, int player,
                           const RevisionPolicy& policy, Rng& rng) {
  validate_policy(policy, state);
  if (player < 0 || player >= state.graph.size()) {
    throw std::invalid_argument("player index out of range");
  }
  const auto observed = observed_strategies(state, player, policy.observe_k, rng);
  return best_response_against(observed, state, policy.epsilon);
}

EquilibriumCheck is_pure_equilibrium(const PopulationState& state,
                                     double epsilon, double improvement_tol) {
  RevisionPolicy full{epsilon, 0, 0, false};
  validate_policy(full, state);
  Rng unused(0);
  for (int i = 0; i < state.graph.size(); ++i) {
    const double current = social_pay(state, i, state.strategies[i]);
    const BestResponse br = best_response(state, i, full, unused);
    const double gain = br.pay - current;
    if (gain > improvement_tol) {
      return {false, DeviationWitness{i, br.strategy, gain}};
    }
  }
  return {true, std::nullopt};
}

namespace {

struct RoundOutcome {
  int selected = 0;
  int moved = 0;
};

RoundOutcome advance_round(PopulationState& state, const RevisionPolicy& policy) {
  validate_policy(policy, state);
  Rng rng(mix_seed(state.seed, state.round));
  const auto selected = sample_without_replacement(rng, state.graph.size(),
                                                   policy.revisions_per_round);
  RoundOutcome outcome{static_cast<int>(selected.size()), 0};
  if (policy.simultaneous) {
    std::vector<double> replies(selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i) {
      replies[i] = best_response(state, selected[i], policy, rng).strategy;
    }
    for (std::size_t i = 0; i < selected.size(); ++i) {
      const int who = selected[i];
      if (std::abs(replies[i] - state.strategies[who]) > policy.epsilon) {
        ++outcome.moved;
      }
      state.strategies[who] = replies[i];
    }
  } else {
    for (int who : selected) {
      const double reply = best_response(state, who, policy, rng).strategy;
      if (std::abs(reply - state.strategies[who]) > policy.epsilon) {
        ++outcome.moved;
      }
      state.strategies[who] = reply;
    }
  }
  ++state.round;
  return outcome;
}

}  // namespace

PopulationState step(const PopulationState& state, const RevisionPolicy& policy) {
  PopulationState next = state;
  advance_round(next, policy);
  return next;
}

SimReport run(PopulationState& state, const RevisionPolicy& policy, int rounds,
              const EquilibriumDensity& limit) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  validate_policy(policy, state);
  SimReport report;
  report.churn.reserve(rounds);
  report.mean_pay.reserve(rounds);
  report.ks.reserve(rounds);
  for (int r = 0; r < rounds; ++r) {
    const RoundOutcome outcome = advance_round(state, policy);
    report.churn.push_back(
        outcome.selected == 0
            ? 0.0
            : static_cast<double>(outcome.moved) / outcome.selected);
    report.mean_pay.push_back(mean(social_pay_all(state)));
    report.ks.push_back(ks_distance(state.strategies,
                                    [&](double s) { return limit.cdf(s); }));
  }
  report.final_strategies = state.strategies;
  std::sort(report.final_strategies.begin(), report.final_strategies.end());
  return report;
}

}  // namespace willtest
