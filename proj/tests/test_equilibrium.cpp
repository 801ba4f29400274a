#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "support/oracles.hpp"
#include "willtest/equilibrium.hpp"
#include "willtest/stats.hpp"

using namespace willtest;

namespace {
const std::vector<double> kRhoSpread{0.05, 0.2,       1.0 / 3.0, 0.5,
                                     2.0 / 3.0, 0.8, 0.95};
}

TEST_CASE("exponent and normalizer for the three reference shares") {
  const EquilibriumDensity half({0.5, 1.0});
  CHECK(half.gamma() == 0.0);
  CHECK(half.alpha() == 1.0);
  CHECK(half.density(0.3) == 1.0);

  const EquilibriumDensity two_thirds({2.0 / 3.0, 1.0});
  CHECK(two_thirds.gamma() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two_thirds.alpha() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(two_thirds.density(0.5) == doctest::Approx(1.0).epsilon(1e-14));

  const EquilibriumDensity third({1.0 / 3.0, 1.0});
  CHECK(third.gamma() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(third.alpha() == doctest::Approx(2.0).epsilon(1e-14));
  // den(s) = 1 / (2 sqrt(1 - s))
  CHECK(third.density(0.75) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("density endpoint behavior splits at rho = 1/2") {
  CHECK(std::isinf(EquilibriumDensity({1.0 / 3.0, 1.0}).density(1.0)));
  CHECK(EquilibriumDensity({2.0 / 3.0, 1.0}).density(1.0) == 0.0);
  CHECK(EquilibriumDensity({0.5, 1.0}).density(1.0) == 1.0);
}

TEST_CASE("invalid parameters and arguments throw") {
  CHECK_THROWS_AS(EquilibriumDensity({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(EquilibriumDensity({0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(EquilibriumDensity({0.5, 0.0}), std::invalid_argument);
  const EquilibriumDensity d({0.5, 1.0});
  CHECK_THROWS_AS(d.density(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(d.density(1.1), std::invalid_argument);
  CHECK_THROWS_AS(d.quantile(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(d.quantile(1.01), std::invalid_argument);
  CHECK_THROWS_AS(d.residual_integral_equation(1.0), std::invalid_argument);
  CHECK_THROWS_AS(d.residual_ode(0.0), std::invalid_argument);
  CHECK_THROWS_AS(d.residual_ode(1.0), std::invalid_argument);
  CHECK_THROWS_AS(d.residual_ode_fd(1e-9), std::invalid_argument);
}

TEST_CASE("closed-form CDF and quantile reference points") {
  const EquilibriumDensity third({1.0 / 3.0, 1.0});
  CHECK(third.cdf(0.75) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(third.quantile(0.75) == doctest::Approx(0.9375).epsilon(1e-14));
  CHECK(third.cdf(0.0) == 0.0);
  CHECK(third.cdf(1.0) == 1.0);
  CHECK(third.quantile(0.0) == 0.0);
  CHECK(third.quantile(1.0) == 1.0);
}

TEST_CASE("CDF round trip is exact to 1e-12 across shares") {
  // The grid stops where the quantile is still representably below the
  // horizon (1e-4*T away); closer to u = 1 the strategy collapses onto the
  // last few doubles below T and the round trip loses digits no matter how
  // the closed forms are coded.  The u = 1 endpoint itself is exact.
  for (double rho : kRhoSpread) {
    const EquilibriumDensity d({rho, 2.5});
    const double cap = 1.0 - std::pow(1e-4, rho / (1.0 - rho));
    for (int i = 0; i <= 100; ++i) {
      const double u = cap * i / 100.0;
      CHECK(std::abs(d.cdf(d.quantile(u)) - u) <= 1e-12);
    }
    CHECK(d.cdf(d.quantile(1.0)) == 1.0);
  }
}

TEST_CASE("quantile saturates at the horizon near u = 1 for small shares") {
  // With rho = 0.05 the quantile exponent is 19, so for u beyond ~0.86 the
  // true value sits inside the last ulp below T and rounds onto T exactly;
  // the CDF consequently jumps from below 0.9 straight to 1.
  const EquilibriumDensity d({0.05, 1.0});
  CHECK(d.quantile(0.999) == 1.0);
  CHECK(d.cdf(d.quantile(0.999)) == 1.0);
  CHECK(d.cdf(std::nextafter(1.0, 0.0)) < 0.9);
}

TEST_CASE("CDF agrees with independent adaptive integration of the density") {
  for (double rho : {0.25, 0.5, 0.75}) {
    const EquilibriumDensity d({rho, 1.0});
    for (double s : {0.1, 0.4, 0.7, 0.9, 0.99}) {
      const double reference =
          oracles::cdf_numeric(d.gamma(), d.alpha(), 1.0, s);
      CHECK(d.cdf(s) == doctest::Approx(reference).epsilon(1e-9));
    }
  }
}

TEST_CASE("quantile agrees with bisection on the numeric CDF") {
  for (double rho : {1.0 / 3.0, 0.5, 0.7}) {
    const EquilibriumDensity d({rho, 1.0});
    for (double u : {0.05, 0.25, 0.5, 0.75, 0.9}) {
      const double reference =
          oracles::quantile_numeric(d.gamma(), d.alpha(), 1.0, u);
      CHECK(d.quantile(u) == doctest::Approx(reference).epsilon(1e-8));
    }
  }
}

TEST_CASE("tail mass matches the substitution-based integral") {
  for (double rho : kRhoSpread) {
    const double T = 1.5;
    const EquilibriumDensity d({rho, T});
    for (double a : {0.0, 0.3, 0.9, 1.2, 1.45}) {
      const double reference =
          oracles::power_tail_integral(d.gamma(), d.alpha(), T, a);
      CHECK(d.tail_mass(a) == doctest::Approx(reference).epsilon(1e-10));
    }
  }
}

TEST_CASE("numeric mass over the full support is 1") {
  for (double rho : kRhoSpread) {
    const EquilibriumDensity d({rho, 1.0});
    CHECK(std::abs(d.mass_numeric(0.0, 1.0) - 1.0) <= 1e-8);
  }
}

TEST_CASE("every strategy earns the constant pay rho T") {
  for (double rho : kRhoSpread) {
    const double T = 2.0;
    const EquilibriumDensity d({rho, T});
    CHECK(d.constant_pay() == doctest::Approx(rho * T).epsilon(1e-14));
    for (int i = 0; i <= 10; ++i) {
      const double s = T * i / 10.0;
      CHECK(std::abs(d.pay(s) - rho * T) <= 1e-6 * T);
    }
  }
}

TEST_CASE("pay quadrature converges even for near-degenerate shares") {
  const EquilibriumDensity d({0.999, 1.0});
  QuadratureSpec quad;
  quad.panels = 65536;  // gamma ~ 999 needs extra resolution
  CHECK(std::abs(d.pay(0.5, quad) - d.constant_pay()) <= 1e-6);
}

TEST_CASE("both defining residuals vanish") {
  for (double rho : kRhoSpread) {
    const EquilibriumDensity d({rho, 1.0});
    for (double s : {0.0, 0.2, 0.5, 0.8, 0.95}) {
      CHECK(std::abs(d.residual_integral_equation(s)) <= 1e-12);
    }
    for (double s : {0.05, 0.3, 0.6, 0.95}) {
      CHECK(std::abs(d.residual_ode(s)) <= 1e-10);
      CHECK(std::abs(d.residual_ode_fd(s)) <= 1e-4);
    }
  }
}

TEST_CASE("analytic derivative matches central differences") {
  for (double rho : {0.3, 0.6}) {
    const EquilibriumDensity d({rho, 1.0});
    const double h = 1e-6;
    for (double s : {0.2, 0.5, 0.8}) {
      const double fd = (d.density(s + h) - d.density(s - h)) / (2.0 * h);
      CHECK(d.density_deriv(s) ==
            doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("sampler is deterministic, in range, and hits the right mean") {
  const EquilibriumDensity d({2.0 / 3.0, 1.0});
  const auto xs = d.sample(100000, 42);
  const auto again = d.sample(100000, 42);
  CHECK(xs == again);
  for (double x : xs) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  // E[s] = T - rho T = 1/3
  CHECK(std::abs(mean(xs) - 1.0 / 3.0) <= 0.005);

  const EquilibriumDensity half({0.5, 1.0});
  const auto us = half.sample(100000, 42);
  CHECK(std::abs(mean(us) - 0.5) <= 3.0 / std::sqrt(1.2e6));
}

TEST_CASE("sampled draws pass a KS check against the closed-form CDF") {
  const EquilibriumDensity d({2.0 / 3.0, 1.0});
  auto xs = d.sample(100000, 42);
  const double ks = ks_distance(xs, [&](double s) { return d.cdf(s); });
  CHECK(ks < 1.95 / std::sqrt(1e5));
}

TEST_CASE("expected waiting cost E[T - s] equals rho T by quadrature") {
  for (double rho : {0.3, 0.5, 0.7}) {
    const double T = 1.0;
    const EquilibriumDensity d({rho, T});
    // pay against an opponent fixed at T is exactly rho (T - s) in
    // expectation... integrating (T - t) den(t) over the support:
    const double expected_remaining = d.pay(T);
    CHECK(std::abs(expected_remaining - rho * T) <= 1e-8);
  }
}
