#ifndef WILLTEST_ANALYSIS_HPP
#define WILLTEST_ANALYSIS_HPP

#include <cstdint>
#include <limits>
#include <string>

#include "willtest/equilibrium.hpp"
#include "willtest/game.hpp"

namespace willtest {

// Closed-form expectation of a repeated-game scenario next to a seeded
// Monte Carlo estimate of the same quantity. Scenarios with a commonly
// quoted alternative figure carry it in reference_value; reference_matches
// records whether it agrees with the analytic value.
struct GuaranteeReport {
  std::string scenario;
  double analytic = 0.0;
  double monte_carlo = 0.0;
  std::size_t samples = 0;
  double standard_error = 0.0;
  double reference_value = std::numeric_limits<double>::quiet_NaN();
  bool reference_matches = true;
};

// Fixed strategy s against an opponent mixing by the equilibrium density:
// the fixed player's expected pay is the constant rho * T regardless of s.
GuaranteeReport fixed_vs_mixed(double s, const EquilibriumDensity& d,
                               std::size_t samples, std::uint64_t seed);

// Mixing player against an opponent pinned at the full horizon: the mixer
// always capitulates first, earning rho (T - s), so the expectation is
// rho * E[T - s] = rho^2 T. The rho T / 2 figure often quoted for this
// matchup is carried as reference_value; it only coincides at rho = 1/2.
GuaranteeReport mixed_vs_full_horizon(const EquilibriumDensity& d,
                                      std::size_t samples, std::uint64_t seed);

// Opponent's payoff when we capitulate immediately (s = 0): the horizon T
// for any opponent_s > 0, the tie share rho T at an exact tie.
double play_zero_guarantee(double opponent_s, const GameParams& p);

struct RatioPayoffs {
  double opponent_pay;
  double self_pay;
};

// Payoffs when we hold out the whole horizon: the opponent always earns
// exactly the fraction rho of our own pay. Undefined at opponent_s = T
// (tie, both zero).
RatioPayoffs full_horizon_payoffs(double opponent_s, const GameParams& p);

// Strict alternation of the capitulator role: each player averages
// (T + rho T) / 2 per round. Returns the common per-player average.
double alternation_split(const GameParams& p, int rounds);

}  // namespace willtest

#endif  // WILLTEST_ANALYSIS_HPP
