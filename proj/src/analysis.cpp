#include "willtest/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "willtest/random.hpp"

namespace willtest {

namespace {

struct RunningMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  double standard_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

}  // namespace

GuaranteeReport fixed_vs_mixed(double s, const EquilibriumDensity& d,
                               std::size_t samples, std::uint64_t seed) {
  const GameParams& p = d.params();
  check_strategy(s, p, "s");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  Rng rng(seed);
  RunningMoments acc;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = d.quantile(uniform01(rng));
    acc.add(payoff(s, t, p).p1);
  }
  GuaranteeReport r;
  r.scenario = "fixed_vs_mixed";
  r.analytic = d.constant_pay();
  r.monte_carlo = acc.mean;
  r.samples = samples;
  r.standard_error = acc.standard_error();
  return r;
}

GuaranteeReport mixed_vs_full_horizon(const EquilibriumDensity& d,
                                      std::size_t samples, std::uint64_t seed) {
  const GameParams& p = d.params();
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  Rng rng(seed);
  RunningMoments acc;
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = d.quantile(uniform01(rng));
    acc.add(payoff(s, p.horizon, p).p1);
  }
  GuaranteeReport r;
  r.scenario = "mixed_vs_full_horizon";
  r.analytic = p.rho * p.rho * p.horizon;
  r.monte_carlo = acc.mean;
  r.samples = samples;
  r.standard_error = acc.standard_error();
  r.reference_value = p.rho * p.horizon / 2.0;
  r.reference_matches = std::abs(r.analytic - r.reference_value) <= 1e-12;
  return r;
}

double play_zero_guarantee(double opponent_s, const GameParams& p) {
  check_strategy(opponent_s, p, "opponent_s");
  return payoff(0.0, opponent_s, p).p2;
}

RatioPayoffs full_horizon_payoffs(double opponent_s, const GameParams& p) {
  check_strategy(opponent_s, p, "opponent_s");
  if (opponent_s == p.horizon) {
    throw std::invalid_argument(
        "opponent_s = horizon is a tie; the pay ratio is undefined");
  }
  const PayoffPair pp = payoff(p.horizon, opponent_s, p);
  return {pp.p2, pp.p1};
}

double alternation_split(const GameParams& p, int rounds) {
  if (rounds < 2 || rounds % 2 != 0) {
    throw std::invalid_argument("rounds must be even and >= 2");
  }
  const double holdout = p.horizon / 2.0;  // any s > 0; the winner's pay is T either way
  double pay1 = 0.0, pay2 = 0.0;
  for (int r = 0; r < rounds; ++r) {
    const PayoffPair pp = (r % 2 == 0) ? payoff(0.0, holdout, p)
                                       : payoff(holdout, 0.0, p);
    pay1 += pp.p1;
    pay2 += pp.p2;
  }
  pay1 /= rounds;
  pay2 /= rounds;
  if (std::abs(pay1 - pay2) > 1e-12 * p.horizon) {
    throw std::logic_error("alternation averages diverged");
  }
  return pay1;
}

}  // namespace willtest
