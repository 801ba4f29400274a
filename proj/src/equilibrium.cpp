#include "willtest/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "willtest/random.hpp"

namespace willtest {

EquilibriumDensity::EquilibriumDensity(GameParams params)
    : params_(validate_params(params.rho, params.horizon)) {
  const double rho = params_.rho;
  gamma_ = (2.0 * rho - 1.0) / (1.0 - rho);
  alpha_ = (1.0 - rho) * std::pow(params_.horizon, rho / (1.0 - rho)) / rho;
}

void EquilibriumDensity::check_support(double s, const char* name) const {
  if (!(s >= 0.0 && s <= params_.horizon)) {
    throw std::invalid_argument(std::string(name) + " outside [0, horizon]: " +
                                std::to_string(s));
  }
}

double EquilibriumDensity::density(double s) const {
  check_support(s, "s");
  const double rem = params_.horizon - s;
  if (rem == 0.0 && gamma_ < 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::pow(rem, gamma_) / alpha_;
}

double EquilibriumDensity::density_deriv(double s) const {
  check_support(s, "s");
  return -gamma_ * std::pow(params_.horizon - s, gamma_ - 1.0) / alpha_;
}

double EquilibriumDensity::cdf(double s) const {
  check_support(s, "s");
  const double rho = params_.rho;
  return 1.0 - std::pow((params_.horizon - s) / params_.horizon,
                        rho / (1.0 - rho));
}

double EquilibriumDensity::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("u outside [0, 1]: " + std::to_string(u));
  }
  const double rho = params_.rho;
  return params_.horizon * (1.0 - std::pow(1.0 - u, (1.0 - rho) / rho));
}

std::vector<double> EquilibriumDensity::sample(std::size_t n,
                                               std::uint64_t seed) const {
  Rng rng(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = quantile(uniform01(rng));
  return out;
}

double EquilibriumDensity::tail_mass(double a) const {
  check_support(a, "a");
  return std::pow((params_.horizon - a) / params_.horizon, gamma_ + 1.0);
}

double EquilibriumDensity::mass_numeric(double a, double b,
                                        const QuadratureSpec& quad) const {
  check_support(a, "a");
  check_support(b, "b");
  validate_quadrature(quad);
  return power_integral(gamma_, a, b, quad);
}

double EquilibriumDensity::power_integral_exact(double q, double a,
                                                double b) const {
  // antiderivative of (T-t)^q / alpha is -(T-t)^(q+1) / ((q+1) alpha)
  const double rem_a = params_.horizon - a;
  const double rem_b = params_.horizon - b;
  return (std::pow(rem_a, q + 1.0) - std::pow(rem_b, q + 1.0)) /
         ((q + 1.0) * alpha_);
}

double EquilibriumDensity::power_integral(double q, double a, double b,
                                          const QuadratureSpec& quad) const {
  if (b <= a) return 0.0;
  const double cutoff = params_.horizon * (1.0 - quad.tail_fraction);
  const auto integrand = [this, q](double t) {
    return std::pow(params_.horizon - t, q) / alpha_;
  };
  if (b <= cutoff) {
    return composite_simpson(integrand, a, b, quad.panels);
  }
  if (a >= cutoff) {
    return power_integral_exact(q, a, b);
  }
  return composite_simpson(integrand, a, cutoff, quad.panels) +
         power_integral_exact(q, cutoff, b);
}

double EquilibriumDensity::pay(double s, const QuadratureSpec& quad) const {
  check_support(s, "s");
  validate_quadrature(quad);
  const double T = params_.horizon;
  const double rho = params_.rho;
  const auto eval = [&](const QuadratureSpec& q) {
    const double contested = power_integral(gamma_ + 1.0, 0.0, s, q);
    const double tail = power_integral(gamma_, s, T, q);
    return contested + rho * (T - s) * tail;
  };
  const double fine = eval(quad);
  QuadratureSpec half = quad;
  half.panels = quad.panels / 2;  // below the user floor on purpose
  const double coarse = eval(half);
  const double estimate = std::abs(fine - coarse) / 15.0;
  if (estimate > 1e-3 * T) {
    throw std::runtime_error(
        "pay quadrature did not converge at " + std::to_string(quad.panels) +
        " panels; residual estimate " + std::to_string(estimate));
  }
  return fine;
}

double EquilibriumDensity::residual_integral_equation(double s) const {
  check_support(s, "s");
  if (s >= params_.horizon) {
    throw std::invalid_argument("residual requires s < horizon");
  }
  const double rho = params_.rho;
  const double rem = params_.horizon - s;
  return (1.0 - rho) * density(s) * rem - rho * tail_mass(s);
}

double EquilibriumDensity::residual_ode(double s) const {
  check_support(s, "s");
  if (!(s > 0.0 && s < params_.horizon)) {
    throw std::invalid_argument("residual requires s strictly inside (0, horizon)");
  }
  const double rho = params_.rho;
  return (1.0 - rho) * (params_.horizon - s) * density_deriv(s) +
         (2.0 * rho - 1.0) * density(s);
}

double EquilibriumDensity::residual_ode_fd(double s) const {
  const double T = params_.horizon;
  const double h = 1e-6 * T;
  if (!(s >= 10.0 * h && s <= T - 10.0 * h)) {
    throw std::invalid_argument("finite-difference check needs 10h margin");
  }
  const double rho = params_.rho;
  const double deriv_fd = (density(s + h) - density(s - h)) / (2.0 * h);
  const double term1 = (1.0 - rho) * (T - s) * deriv_fd;
  const double term2 = (2.0 * rho - 1.0) * density(s);
  const double scale = std::max(std::abs(term1), std::abs(term2));
  if (scale == 0.0) return 0.0;  // uniform case: both terms vanish
  return (term1 + term2) / scale;
}

}  // namespace willtest
