#ifndef WILLTEST_EQUILIBRIUM_HPP
#define WILLTEST_EQUILIBRIUM_HPP

#include <cstdint>
#include <vector>

#include "willtest/game.hpp"
#include "willtest/quadrature.hpp"

namespace willtest {

// Closed-form social-equilibrium strategy density
//
//   den(s) = (T - s)^gamma / alpha,   gamma = (2 rho - 1) / (1 - rho),
//   alpha  = (1 - rho) T^(rho/(1-rho)) / rho,
//
// the unique-pay family under which every strategy earns the constant
// rho * T. gamma > -1 holds for all valid rho, so the density is integrable
// even when it diverges at s = T (rho < 1/2).
class EquilibriumDensity {
 public:
  explicit EquilibriumDensity(GameParams params);

  const GameParams& params() const { return params_; }
  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }
  double horizon() const { return params_.horizon; }

  // The constant pay c = pay(0) = rho * T earned by every strategy.
  double constant_pay() const { return params_.rho * params_.horizon; }

  // den(s); returns +infinity at s = T when gamma < 0.
  double density(double s) const;

  // den'(s) = -gamma (T-s)^(gamma-1) / alpha, for the ODE residual.
  double density_deriv(double s) const;

  // F(s) = 1 - ((T-s)/T)^(rho/(1-rho)); exact, finite everywhere.
  double cdf(double s) const;

  // F^-1(u) = T (1 - (1-u)^((1-rho)/rho)).
  double quantile(double u) const;

  // n i.i.d. draws by inverse-transform sampling; deterministic per seed.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  // Mass of the density on [a, T], via the exact antiderivative.
  double tail_mass(double a) const;

  // Numeric mass of the density on [a, b] with the same Simpson-plus-tail
  // scheme as pay(); the normalization cross-check.
  double mass_numeric(double a, double b,
                      const QuadratureSpec& quad = QuadratureSpec{}) const;

  // Numeric evaluation of the pay functional
  //   pay(s) = int_0^s den(t)(T-t) dt + rho (T-s) int_s^T den(t) dt
  // by composite Simpson away from s = T and the exact antiderivative on
  // the tail window. Throws if the Richardson error estimate indicates
  // non-convergence at the requested panel count.
  double pay(double s, const QuadratureSpec& quad = QuadratureSpec{}) const;

  // Residual of the once-differentiated pay equation
  //   den(s)(T-s) - rho den(s)(T-s) - rho int_s^T den(t) dt,
  // with the tail integral in closed form; analytically zero.
  double residual_integral_equation(double s) const;

  // Residual of the ODE (1-rho)(T-s) den'(s) + (2 rho - 1) den(s) with the
  // analytic derivative; analytically zero.
  double residual_ode(double s) const;

  // Same residual with den' replaced by central differences
  // (h = 1e-6 T), normalized by the larger term magnitude. Requires s at
  // least 10h from either endpoint.
  double residual_ode_fd(double s) const;

 private:
  // int_a^b (T-t)^q / alpha dt, Simpson below the tail window and the exact
  // antiderivative inside it.
  double power_integral(double q, double a, double b,
                        const QuadratureSpec& quad) const;
  double power_integral_exact(double q, double a, double b) const;
  void check_support(double s, const char* name) const;

  GameParams params_;
  double gamma_;
  double alpha_;
};

}  // namespace willtest

#endif  // WILLTEST_EQUILIBRIUM_HPP
