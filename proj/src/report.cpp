#include "willtest/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "willtest/random.hpp"

namespace willtest {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string short_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string coord(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  }
  out.back() = hi;
  return out;
}

}  // namespace

DensityTable make_density_table(const std::vector<double>& rhos, double horizon,
                                int grid_points, double ceiling_override) {
  if (rhos.empty()) {
    throw std::invalid_argument("density table needs at least one rho");
  }
  if (grid_points < 2) {
    throw std::invalid_argument("grid needs at least 2 points");
  }
  if (ceiling_override < 0.0) {
    throw std::invalid_argument("clip ceiling must be positive");
  }
  DensityTable table;
  table.horizon = horizon;
  table.grid = linspace(0.0, horizon, grid_points);
  for (double rho : rhos) {
    EquilibriumDensity d({rho, horizon});
    table.rhos.push_back(rho);
    table.labels.push_back("rho=" + short_number(rho));
    std::vector<double> curve(table.grid.size());
    for (std::size_t i = 0; i < table.grid.size(); ++i) {
      curve[i] = d.density(table.grid[i]);
    }
    table.curves.push_back(std::move(curve));
    table.clip_ceilings.push_back(
        ceiling_override > 0.0 ? ceiling_override : 10.0 * d.density(0.0));
  }
  return table;
}

std::string density_csv(const DensityTable& table) {
  std::string out = "s";
  for (const auto& label : table.labels) out += "," + label;
  out += "\n";
  for (std::size_t i = 0; i < table.grid.size(); ++i) {
    out += format_number(table.grid[i]);
    for (const auto& curve : table.curves) {
      out += ",";
      if (std::isfinite(curve[i])) out += format_number(curve[i]);
    }
    out += "\n";
  }
  return out;
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#e377c2"};
constexpr int kPaletteSize = 8;

// s where the curve crosses its clip ceiling; power curves are monotone in
// s, so the crossing is unique when it exists.
double clip_crossing(const EquilibriumDensity& d, double ceiling) {
  if (d.gamma() == 0.0) return 0.0;
  const double s = d.horizon() - std::pow(ceiling * d.alpha(), 1.0 / d.gamma());
  return std::clamp(s, 0.0, d.horizon());
}

}  // namespace

std::string density_svg(const DensityTable& table, SvgOptions opts) {
  const double ml = 70, mr = 170, mt = 20, mb = 50;
  const double pw = opts.width - ml - mr;
  const double ph = opts.height - mt - mb;
  const double T = table.horizon;

  double vmax = 0.0;
  for (std::size_t k = 0; k < table.curves.size(); ++k) {
    double curve_max = 0.0;
    for (double v : table.curves[k]) {
      if (std::isfinite(v)) curve_max = std::max(curve_max, v);
    }
    vmax = std::max(vmax, std::min(curve_max, table.clip_ceilings[k]));
  }
  if (vmax <= 0.0) vmax = 1.0;
  const double ymax = 1.05 * vmax;

  const auto sx = [&](double s) { return ml + s / T * pw; };
  const auto sy = [&](double v) { return mt + ph * (1.0 - v / ymax); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(opts.width) + "\" height=\"" +
         std::to_string(opts.height) + "\" viewBox=\"0 0 " +
         std::to_string(opts.width) + " " + std::to_string(opts.height) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";

  // axes with 5 ticks each
  svg += "<line x1=\"" + coord(ml) + "\" y1=\"" + coord(mt + ph) + "\" x2=\"" +
         coord(ml + pw) + "\" y2=\"" + coord(mt + ph) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + coord(ml) + "\" y1=\"" + coord(mt) + "\" x2=\"" +
         coord(ml) + "\" y2=\"" + coord(mt + ph) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double s = T * t / 4.0;
    const double v = ymax * t / 4.0;
    svg += "<line x1=\"" + coord(sx(s)) + "\" y1=\"" + coord(mt + ph) +
           "\" x2=\"" + coord(sx(s)) + "\" y2=\"" + coord(mt + ph + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(sx(s)) + "\" y=\"" + coord(mt + ph + 18) +
           "\" text-anchor=\"middle\">" + short_number(s) + "</text>\n";
    svg += "<line x1=\"" + coord(ml - 5) + "\" y1=\"" + coord(sy(v)) +
           "\" x2=\"" + coord(ml) + "\" y2=\"" + coord(sy(v)) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + coord(ml - 8) + "\" y=\"" + coord(sy(v) + 4) +
           "\" text-anchor=\"end\">" + short_number(v) + "</text>\n";
  }
  svg += "<text x=\"" + coord(ml + pw / 2) + "\" y=\"" +
         coord(mt + ph + 38) + "\" text-anchor=\"middle\">s</text>\n";
  svg += "<text x=\"16\" y=\"" + coord(mt + ph / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         coord(mt + ph / 2) + ")\">den(s)</text>\n";

  std::vector<bool> clipped(table.curves.size(), false);
  for (std::size_t k = 0; k < table.curves.size(); ++k) {
    const char* color = kPalette[k % kPaletteSize];
    const double ceiling = table.clip_ceilings[k];
    EquilibriumDensity d({table.rhos[k], T});
    std::string points;
    bool above = false;
    const auto flush = [&]() {
      if (!points.empty()) {
        svg += "<polyline class=\"curve\" fill=\"none\" stroke=\"" +
               std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
               points + "\"/>\n";
        points.clear();
      }
    };
    const auto add = [&](double s, double v) {
      if (!points.empty()) points += " ";
      points += coord(sx(s)) + "," + coord(sy(v));
    };
    const auto marker = [&](double s) {
      const double x = sx(s), y = sy(ceiling);
      svg += "<polygon class=\"clip-marker\" fill=\"" + std::string(color) +
             "\" points=\"" + coord(x) + "," + coord(y - 6) + " " +
             coord(x - 5) + "," + coord(y + 4) + " " + coord(x + 5) + "," +
             coord(y + 4) + "\"/>\n";
      clipped[k] = true;
    };
    for (std::size_t i = 0; i < table.grid.size(); ++i) {
      const double s = table.grid[i];
      const double v = table.curves[k][i];
      if (v <= ceiling) {
        if (above) add(clip_crossing(d, ceiling), ceiling);
        above = false;
        add(s, v);
      } else {
        if (!above) {
          const double cut = i == 0 ? s : clip_crossing(d, ceiling);
          if (i > 0) add(cut, ceiling);
          flush();
          marker(cut);
        }
        above = true;
      }
    }
    flush();
  }

  const double lx = opts.width - mr + 20;
  for (std::size_t k = 0; k < table.labels.size(); ++k) {
    const double ly = mt + 14 + 18.0 * k;
    svg += "<line x1=\"" + coord(lx) + "\" y1=\"" + coord(ly - 4) +
           "\" x2=\"" + coord(lx + 22) + "\" y2=\"" + coord(ly - 4) +
           "\" stroke=\"" + kPalette[k % kPaletteSize] +
           "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + coord(lx + 28) + "\" y=\"" + coord(ly) + "\">" +
           table.labels[k] + (clipped[k] ? " (clipped)" : "") + "</text>\n";
  }

  svg += "</g>\n</svg>\n";
  return svg;
}

VerifyReport run_verification(const VerifyOptions& opts) {
  if (opts.rhos.empty()) {
    throw std::invalid_argument("verification needs at least one rho");
  }
  validate_quadrature(opts.quad);
  VerifyReport report;
  report.horizon = opts.horizon;
  const double T = opts.horizon;
  const auto push = [&](const std::string& name, double rho, double max_res,
                        double tol) {
    report.checks.push_back({name, rho, max_res, tol, max_res <= tol});
    report.overall_pass = report.overall_pass && max_res <= tol;
  };
  for (double rho : opts.rhos) {
    EquilibriumDensity d({rho, T});
    QuadratureSpec quad = opts.quad;
    quad.panels = std::max(
        opts.quad.panels,
        64 * static_cast<int>(std::ceil(d.gamma() + 2.0)));

    push("normalization", rho, std::abs(d.mass_numeric(0.0, T, quad) - 1.0),
         opts.norm_tol);

    double pay_err = 0.0;
    for (double s : linspace(0.0, T, 11)) {
      pay_err = std::max(pay_err, std::abs(d.pay(s, quad) - d.constant_pay()));
    }
    push("constant_pay", rho, pay_err, opts.pay_tol * T);

    double ie_err = 0.0;
    for (double s : linspace(0.0, 0.95 * T, 21)) {
      ie_err = std::max(ie_err, std::abs(d.residual_integral_equation(s)));
    }
    push("integral_equation_residual", rho, ie_err, opts.residual_tol);

    double ode_err = 0.0;
    double fd_err = 0.0;
    for (double s : linspace(0.05 * T, 0.95 * T, 19)) {
      ode_err = std::max(ode_err, std::abs(d.residual_ode(s)));
      fd_err = std::max(fd_err, std::abs(d.residual_ode_fd(s)));
    }
    push("ode_residual", rho, ode_err, opts.residual_tol);
    push("ode_residual_fd", rho, fd_err, opts.fd_rel_tol);

    // Near u = 1 the quantile lands within a few ulps of T, and doubles
    // cannot hold a strategy closer to T than eps*T, so the round trip
    // degrades as 1/(1-u)^((1-rho)/rho) no matter how cdf/quantile are
    // evaluated.  Stop the grid where the quantile still sits at least
    // 1e-4*T below the horizon and pin the exact u = 1 endpoint separately.
    double rt_err = 0.0;
    const double u_cap = 1.0 - std::pow(1e-4, rho / (1.0 - rho));
    for (double u : linspace(0.0, u_cap, 1001)) {
      rt_err = std::max(rt_err, std::abs(d.cdf(d.quantile(u)) - u));
    }
    rt_err = std::max(rt_err, std::abs(d.cdf(d.quantile(1.0)) - 1.0));
    push("cdf_roundtrip", rho, rt_err, opts.roundtrip_tol);
  }
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"rho", c.rho},
                      {"max_residual", c.max_residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  return {{"schema_version", 1},
          {"horizon", report.horizon},
          {"overall_pass", report.overall_pass},
          {"checks", checks}};
}

std::string simulation_csv(const SimReport& report) {
  std::string out = "round,churn,mean_pay,ks\n";
  for (std::size_t i = 0; i < report.churn.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_number(report.churn[i]) + "," +
           format_number(report.mean_pay[i]) + "," +
           format_number(report.ks[i]) + "\n";
  }
  return out;
}

nlohmann::json simulation_summary(const SimReport& report,
                                  const PopulationState& final_state,
                                  const EquilibriumCheck& check) {
  const GameParams& p = final_state.params;
  nlohmann::json eq = {{"is_equilibrium", check.is_equilibrium}};
  if (check.witness) {
    eq["player"] = check.witness->player;
    eq["deviation"] = check.witness->deviation;
    eq["gain"] = check.witness->gain;
  }
  return {{"schema_version", 1},
          {"n", final_state.graph.size()},
          {"rho", p.rho},
          {"horizon", p.horizon},
          {"seed", final_state.seed},
          {"rounds", report.churn.size()},
          {"final_ks", report.ks.back()},
          {"final_mean_pay", report.mean_pay.back()},
          {"mean_pay_gap",
           std::abs(report.mean_pay.back() - p.rho * p.horizon)},
          {"equilibrium_check", eq}};
}

nlohmann::json to_json(const GuaranteeReport& report) {
  nlohmann::json j = {{"scenario", report.scenario},
                      {"analytic", report.analytic},
                      {"monte_carlo", report.monte_carlo},
                      {"samples", report.samples},
                      {"standard_error", report.standard_error},
                      {"abs_error",
                       std::abs(report.monte_carlo - report.analytic)}};
  if (std::isfinite(report.reference_value)) {
    j["reference_value"] = report.reference_value;
    j["reference_matches"] = report.reference_matches;
    j["discrepancy"] = !report.reference_matches;
  }
  return j;
}

nlohmann::json analyze_json(const AnalyzeOptions& opts) {
  validate_params(opts.params.rho, opts.params.horizon);
  if (opts.samples < 2) {
    throw std::invalid_argument("analysis needs at least 2 samples");
  }
  if (opts.s_grid_points < 2) {
    throw std::invalid_argument("s-grid needs at least 2 points");
  }
  const GameParams& p = opts.params;
  const double T = p.horizon;
  EquilibriumDensity d(p);

  nlohmann::json grid = nlohmann::json::array();
  const auto svals = linspace(0.0, T, opts.s_grid_points);
  for (std::size_t i = 0; i < svals.size(); ++i) {
    auto r = fixed_vs_mixed(svals[i], d, opts.samples,
                            mix_seed(opts.seed, i));
    nlohmann::json item = to_json(r);
    item["s"] = svals[i];
    grid.push_back(item);
  }

  auto full = mixed_vs_full_horizon(d, opts.samples,
                                    mix_seed(opts.seed, svals.size()));

  const RatioPayoffs hold = full_horizon_payoffs(T / 2.0, p);
  return {{"schema_version", 1},
          {"rho", p.rho},
          {"horizon", T},
          {"samples", opts.samples},
          {"seed", opts.seed},
          {"scenarios",
           {{"fixed_vs_mixed_grid", grid},
            {"mixed_vs_full_horizon", to_json(full)},
            {"play_zero",
             {{"opponent_pay_any_positive_s", play_zero_guarantee(T / 2.0, p)},
              {"opponent_pay_tie_at_zero", play_zero_guarantee(0.0, p)}}},
            {"full_horizon_hold",
             {{"opponent_pay", hold.opponent_pay},
              {"self_pay", hold.self_pay},
              {"opponent_to_self_ratio", hold.opponent_pay / hold.self_pay}}},
            {"alternation",
             {{"per_player_average", alternation_split(p, 1000)},
              {"rounds", 1000}}}}}};
}

}  // namespace willtest
