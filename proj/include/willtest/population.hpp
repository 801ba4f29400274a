#ifndef WILLTEST_POPULATION_HPP
#define WILLTEST_POPULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "willtest/equilibrium.hpp"
#include "willtest/game.hpp"
#include "willtest/random.hpp"

namespace willtest {

// Undirected interaction graph; the complete graph (the uniform-pairing
// social game) is kept implicit instead of materializing n^2/2 edges.
class InteractionGraph {
 public:
  static InteractionGraph complete(int n);
  static InteractionGraph from_edges(int n,
                                     const std::vector<std::pair<int, int>>& edges);

  int size() const { return n_; }
  bool is_complete() const { return complete_; }
  int degree(int player) const {
    return complete_ ? n_ - 1 : static_cast<int>(adjacency_[player].size());
  }

  // idx-th neighbor of `player`, 0 <= idx < degree(player).
  int neighbor_at(int player, int idx) const {
    if (complete_) return idx < player ? idx : idx + 1;
    return adjacency_[player][idx];
  }

  template <class F>
  void for_each_neighbor(int player, F&& f) const {
    if (complete_) {
      for (int j = 0; j < n_; ++j) {
        if (j != player) f(j);
      }
    } else {
      for (int j : adjacency_[player]) f(j);
    }
  }

 private:
  InteractionGraph(int n, bool complete) : n_(n), complete_(complete) {}
  int n_ = 0;
  bool complete_ = true;
  std::vector<std::vector<int>> adjacency_;  // empty when complete
};

// Plain-text graph format: first line "n <count>", then one zero-indexed
// undirected edge "u v" per line; duplicates rejected.
InteractionGraph load_graph(const std::string& path);

// One decimal strategy per line; the count must equal expected_n.
std::vector<double> load_strategies(const std::string& path, int expected_n,
                                    const GameParams& params);

struct PopulationState {
  std::vector<double> strategies;  // one per player, each in [0, horizon]
  InteractionGraph graph;
  GameParams params;
  std::uint64_t seed = 42;
  std::uint64_t round = 0;
};

PopulationState make_population(std::vector<double> strategies,
                                InteractionGraph graph, GameParams params,
                                std::uint64_t seed);

std::vector<double> equal_strategies(int n, double value, const GameParams& p);
std::vector<double> uniform_strategies(int n, const GameParams& p,
                                       std::uint64_t seed);

// How revisers behave: the jump offset epsilon used for "just above an
// opponent", how much of the strategy set they observe, and how many
// players revise per round. Revisions apply sequentially in selection
// order unless `simultaneous` is set.
struct RevisionPolicy {
  double epsilon = 1e-9;
  int observe_k = 0;  // 0 = full observation, otherwise a k-subset of neighbors
  int revisions_per_round = 1;
  bool simultaneous = false;
};

void validate_policy(const RevisionPolicy& policy, const PopulationState& state);

// Mean payoff of `candidate` against the player's graph neighbors
// (self excluded).
double social_pay(const PopulationState& state, int player, double candidate);

// social_pay for every player at their current strategy. Complete graphs
// use a sorted prefix-sum evaluation, O(n log n) instead of O(n^2).
std::vector<double> social_pay_all(const PopulationState& state);

// Uniform k-subset of the player's graph neighbors, drawn without
// replacement; the "not closely observable" regime.
std::vector<int> observe_neighbors(const PopulationState& state, int player,
                                   int k, Rng& rng);

struct BestResponse {
  double strategy;
  double pay;
};

// Argmax of the observed-opponent mean pay over the candidate set
// {0} union {t + epsilon : t observed, t + epsilon <= T}. The pay profile
// is a saw: linearly decreasing between opponent values with an upward
// jump at each one, so these candidates dominate everything else. Ties
// break toward the smallest candidate. `rng` feeds the sampled-observation
// draw and is untouched under full observation.
BestResponse best_response(const PopulationState& state, int player,
                           const RevisionPolicy& policy, Rng& rng);

struct DeviationWitness {
  int player;
  double deviation;
  double gain;
};

struct EquilibriumCheck {
  bool is_equilibrium;
  std::optional<DeviationWitness> witness;
};

// True iff no player's full-observation best response improves on their
// current pay by more than improvement_tol; otherwise carries the first
// improving player found.
EquilibriumCheck is_pure_equilibrium(const PopulationState& state,
                                     double epsilon, double improvement_tol);

// One revision round: revisions_per_round players drawn uniformly without
// replacement, each replaced by their best response. Deterministic given
// (state.seed, state.round).
PopulationState step(const PopulationState& state, const RevisionPolicy& policy);

struct SimReport {
  std::vector<double> churn;     // fraction of revisers that moved > epsilon
  std::vector<double> mean_pay;  // population mean of realized social pay
  std::vector<double> ks;        // sup |F_emp - F_limit| after the round
  std::vector<double> final_strategies;  // sorted
};

// Advances `state` in place by `rounds` rounds; the caller keeps the final
// population for follow-up checks.
SimReport run(PopulationState& state, const RevisionPolicy& policy, int rounds,
              const EquilibriumDensity& limit);

}  // namespace willtest

#endif  // WILLTEST_POPULATION_HPP
