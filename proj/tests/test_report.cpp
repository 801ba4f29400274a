#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "willtest/report.hpp"

using namespace willtest;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("numbers serialize with 12 significant digits") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
  CHECK(format_number(0.0) == "0");
}

TEST_CASE("density table reference rows") {
  const auto uniform = make_density_table({0.5}, 1.0, 3);
  CHECK(density_csv(uniform) == "s,rho=0.5\n0,1\n0.5,1\n1,1\n");

  const auto line = make_density_table({2.0 / 3.0}, 1.0, 3);
  CHECK(density_csv(line) == "s,rho=0.666667\n0,2\n0.5,1\n1,0\n");

  const auto divergent = make_density_table({1.0 / 3.0}, 1.0, 3);
  const std::string csv = density_csv(divergent);
  CHECK(csv.substr(0, 15) == "s,rho=0.333333\n");
  CHECK(csv.find("\n1,\n") != std::string::npos);  // infinity -> empty cell
  CHECK(std::isinf(divergent.curves[0].back()));
}

TEST_CASE("density table validation and defaults") {
  CHECK_THROWS_AS(make_density_table({}, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_density_table({0.5}, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_density_table({1.2}, 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_density_table({0.5}, 1.0, 8, -1.0),
                  std::invalid_argument);

  const auto t = make_density_table({0.2, 1.0 / 3.0}, 1.0, 512);
  REQUIRE(t.grid.size() == 512);
  CHECK(t.grid.front() == 0.0);
  CHECK(t.grid.back() == 1.0);
  // default ceiling is 10x the left-endpoint density
  CHECK(t.clip_ceilings[0] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(t.clip_ceilings[1] == doctest::Approx(5.0).epsilon(1e-12));
  const auto forced = make_density_table({0.2}, 1.0, 16, 42.0);
  CHECK(forced.clip_ceilings[0] == 42.0);
}

TEST_CASE("csv has one row per grid point and stable headers") {
  const auto t =
      make_density_table({0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.8}, 1.0, 512);
  const std::string csv = density_csv(t);
  CHECK(count_occurrences(csv, "\n") == 513);
  CHECK(csv.rfind("s,rho=0.2,rho=0.333333,rho=0.5,rho=0.666667,rho=0.8\n",
                  0) == 0);
}

TEST_CASE("svg clips exactly the divergent curves") {
  const auto t =
      make_density_table({0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.8}, 1.0, 512);
  const std::string svg = density_svg(t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count_occurrences(svg, "<polyline") >= 5);
  CHECK(count_occurrences(svg, "clip-marker") == 2);  // the rho < 1/2 curves
  CHECK(count_occurrences(svg, "(clipped)") == 2);

  const auto tame = make_density_table({0.5, 2.0 / 3.0}, 1.0, 64);
  const std::string tame_svg = density_svg(tame);
  CHECK(count_occurrences(tame_svg, "clip-marker") == 0);
  CHECK(tame_svg.find("(clipped)") == std::string::npos);
}

TEST_CASE("verification passes its own tolerance suite") {
  VerifyOptions opts;
  opts.rhos = {0.3, 0.5, 0.9};
  const auto report = run_verification(opts);
  CHECK(report.overall_pass);
  REQUIRE(report.checks.size() == 18);  // six checks per rho
  for (const auto& c : report.checks) {
    CHECK(c.pass);
    CHECK(c.max_residual <= c.tolerance);
  }

  const auto j = to_json(report);
  CHECK(j["schema_version"] == 1);
  CHECK(j["overall_pass"] == true);
  CHECK(j["checks"].size() == 18);
  CHECK(j["checks"][0].contains("max_residual"));
}

TEST_CASE("verification survives a near-degenerate share by raising panels") {
  VerifyOptions opts;
  opts.rhos = {0.999};
  const auto report = run_verification(opts);
  CHECK(report.overall_pass);
}

TEST_CASE("verification rejects an empty share list") {
  CHECK_THROWS_AS(run_verification(VerifyOptions{}), std::invalid_argument);
}

TEST_CASE("simulation csv and summary carry the run") {
  const GameParams p{0.5, 1.0};
  const EquilibriumDensity limit(p);
  auto state = make_population(uniform_strategies(10, p, 1),
                               InteractionGraph::complete(10), p, 42);
  const auto report = run(state, RevisionPolicy{}, 3, limit);

  const std::string csv = simulation_csv(report);
  CHECK(csv.rfind("round,churn,mean_pay,ks\n", 0) == 0);
  CHECK(count_occurrences(csv, "\n") == 4);
  CHECK(csv.find("\n1,") != std::string::npos);

  const auto check = is_pure_equilibrium(state, 1e-9, 1e-9);
  const auto summary = simulation_summary(report, state, check);
  CHECK(summary["schema_version"] == 1);
  CHECK(summary["n"] == 10);
  CHECK(summary["rounds"] == 3);
  CHECK(summary["final_ks"].get<double>() == report.ks.back());
  CHECK(summary["mean_pay_gap"].get<double>() >= 0.0);
  CHECK(summary["equilibrium_check"].contains("is_equilibrium"));
}

TEST_CASE("summary exposes the deviation witness when there is one") {
  const GameParams p{0.5, 1.0};
  const EquilibriumDensity limit(p);
  auto state = make_population({0.5, 0.5}, InteractionGraph::complete(2), p, 1);
  RevisionPolicy frozen;
  frozen.revisions_per_round = 0;
  const auto report = run(state, frozen, 1, limit);
  const auto check = is_pure_equilibrium(state, 1e-9, 1e-9);
  const auto summary = simulation_summary(report, state, check);
  CHECK(summary["equilibrium_check"]["is_equilibrium"] == false);
  CHECK(summary["equilibrium_check"]["player"] == 0);
  CHECK(summary["equilibrium_check"]["deviation"] == 0.0);
  CHECK(summary["equilibrium_check"]["gain"].get<double>() ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("analysis report covers every scenario") {
  AnalyzeOptions opts;
  opts.params = GameParams{0.5, 1.0};
  opts.samples = 20000;
  opts.s_grid_points = 5;
  const auto j = analyze_json(opts);
  CHECK(j["schema_version"] == 1);
  CHECK(j["rho"] == 0.5);

  const auto& sc = j["scenarios"];
  REQUIRE(sc["fixed_vs_mixed_grid"].size() == 5);
  for (const auto& item : sc["fixed_vs_mixed_grid"]) {
    CHECK(item["analytic"].get<double>() == 0.5);
    CHECK(item.contains("s"));
    CHECK(item.contains("abs_error"));
  }
  CHECK(sc["mixed_vs_full_horizon"]["discrepancy"] == false);
  CHECK(sc["alternation"]["per_player_average"].get<double>() ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(sc["play_zero"]["opponent_pay_any_positive_s"].get<double>() == 1.0);
  CHECK(sc["play_zero"]["opponent_pay_tie_at_zero"].get<double>() == 0.5);
  CHECK(sc["full_horizon_hold"]["opponent_to_self_ratio"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("analysis flags the competing figure away from one half") {
  AnalyzeOptions opts;
  opts.params = GameParams{2.0 / 3.0, 1.0};
  opts.samples = 20000;
  opts.s_grid_points = 3;
  const auto j = analyze_json(opts);
  const auto& full = j["scenarios"]["mixed_vs_full_horizon"];
  CHECK(full["analytic"].get<double>() ==
        doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(full["reference_value"].get<double>() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(full["discrepancy"] == true);
}

TEST_CASE("analysis validates its inputs") {
  AnalyzeOptions opts;
  opts.samples = 1;
  CHECK_THROWS_AS(analyze_json(opts), std::invalid_argument);
  opts = AnalyzeOptions{};
  opts.s_grid_points = 1;
  CHECK_THROWS_AS(analyze_json(opts), std::invalid_argument);
  opts = AnalyzeOptions{};
  opts.params.rho = 1.0;
  CHECK_THROWS_AS(analyze_json(opts), std::invalid_argument);
}
