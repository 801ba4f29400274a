#ifndef WILLTEST_REPORT_HPP
#define WILLTEST_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "willtest/analysis.hpp"
#include "willtest/equilibrium.hpp"
#include "willtest/population.hpp"

namespace willtest {

// Double -> text with 12 significant digits, the CSV serialization format.
std::string format_number(double x);

// Density curves for a list of rho values on a shared s-grid. Divergent
// endpoints (gamma < 0 at s = T) are stored as +infinity and serialized as
// an empty CSV cell. clip_ceiling[k] is where the SVG clips curve k,
// 10x its left-endpoint density by default.
struct DensityTable {
  double horizon = 1.0;
  std::vector<double> grid;
  std::vector<double> rhos;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> curves;
  std::vector<double> clip_ceilings;
};

DensityTable make_density_table(const std::vector<double>& rhos, double horizon,
                                int grid_points, double ceiling_override = 0.0);

std::string density_csv(const DensityTable& table);

struct SvgOptions {
  int width = 800;
  int height = 600;
};

// Self-contained polyline plot: linear axes, one curve per rho, legend,
// and a marker (class="clip-marker") where a divergent curve is cut off.
std::string density_svg(const DensityTable& table, SvgOptions opts = {});

struct VerifyOptions {
  std::vector<double> rhos;
  double horizon = 1.0;
  QuadratureSpec quad;
  double norm_tol = 1e-6;
  double pay_tol = 1e-6;        // scaled by horizon
  double residual_tol = 1e-10;
  double fd_rel_tol = 1e-4;
  double roundtrip_tol = 1e-12;
};

struct VerifyCheck {
  std::string name;
  double rho;
  double max_residual;
  double tolerance;
  bool pass;
};

struct VerifyReport {
  double horizon = 1.0;
  std::vector<VerifyCheck> checks;
  bool overall_pass = true;
};

// Normalization, constant pay on an 11-point grid, both derivation
// residuals (analytic and finite-difference), and the CDF round trip,
// per rho. Panel counts are raised automatically for steep exponents
// (gamma large) so near-degenerate rho values stay within tolerance.
VerifyReport run_verification(const VerifyOptions& opts);

nlohmann::json to_json(const VerifyReport& report);

std::string simulation_csv(const SimReport& report);

nlohmann::json simulation_summary(const SimReport& report,
                                  const PopulationState& final_state,
                                  const EquilibriumCheck& check);

struct AnalyzeOptions {
  GameParams params{0.5, 1.0};
  std::size_t samples = 1000000;
  std::uint64_t seed = 42;
  int s_grid_points = 11;
};

nlohmann::json analyze_json(const AnalyzeOptions& opts);

nlohmann::json to_json(const GuaranteeReport& report);

}  // namespace willtest

#endif  // WILLTEST_REPORT_HPP
