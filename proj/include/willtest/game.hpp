#ifndef WILLTEST_GAME_HPP
#define WILLTEST_GAME_HPP

#include <stdexcept>
#include <string>

namespace willtest {

// One game instance: capitulator's fraction rho and the horizon T.
// Integrability of the equilibrium density requires 0 < rho < 1.
struct GameParams {
  double rho;
  double horizon;
};

inline GameParams validate_params(double rho, double horizon) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::invalid_argument(
        "rho must satisfy 0 < rho < 1 (integrability bound on the "
        "equilibrium density); got " + std::to_string(rho));
  }
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("horizon must be positive; got " +
                                std::to_string(horizon));
  }
  return GameParams{rho, horizon};
}

struct PayoffPair {
  double p1;
  double p2;
};

inline void check_strategy(double s, const GameParams& p, const char* name) {
  if (!(s >= 0.0 && s <= p.horizon)) {
    throw std::invalid_argument(std::string(name) + " outside [0, horizon]: " +
                                std::to_string(s));
  }
}

// Pairwise payoffs. The later player wins T minus the capitulation time;
// the capitulator gets the fraction rho of that. Ties use exact floating
// equality: both earn the capitulator's share.
inline PayoffPair payoff(double s1, double s2, const GameParams& p) {
  check_strategy(s1, p, "s1");
  check_strategy(s2, p, "s2");
  if (s1 > s2) {
    const double w = p.horizon - s2;
    return {w, p.rho * w};
  }
  if (s1 < s2) {
    const double w = p.horizon - s1;
    return {p.rho * w, w};
  }
  const double t = p.rho * (p.horizon - s1);
  return {t, t};
}

}  // namespace willtest

#endif  // WILLTEST_GAME_HPP
