// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bushfire/app/front.hpp"
#include "bushfire/app/run.hpp"
#include "bushfire/global.hpp"
#include "bushfire/solver.hpp"
#include "bushfire/verify.hpp"
#include "support.hpp"

namespace {

namespace fs = std::filesystem;
using namespace bushfire;
using testing::eigenmode;
using testing::kPi;
using testing::small_data_scenario;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bushfire_acceptance_" + name);
  fs::remove_all(dir);
  return dir;
}

double relative_l2(const ScalarField& u, const ScalarField& reference) {
  return l2_norm(u - reference) / l2_norm(reference);
}

Outcome toolbox_suite() {
  verify::SuiteOptions opts;
  opts.seed = 42;
  opts.grid_sizes = {17};
  opts.count = 1000;
  const auto results = verify::run_suite(opts);
  const std::size_t failures = verify::count_failures(results);
  return {failures == 0 && results.size() == 7000,
          format("%zu failures in %zu checks", failures, results.size())};
}

Outcome power_difference() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> exponent(-8.0, 8.0);
  std::size_t failures = 0;
  double worst = -INFINITY;
  const std::size_t n = 1000000;
  for (std::size_t k = 0; k < n; ++k) {
    // Alternate linear and log-uniform magnitudes so both tiny and huge gaps occur.
    double a = unit(rng);
    double b = unit(rng);
    if (k % 2 == 1) {
      a = std::pow(10.0, exponent(rng));
      b = std::pow(10.0, exponent(rng));
    }
    if (k % 5 == 0) b = a * (1.0 + 1e-6 * unit(rng));
    const double gamma = 2.0 - unit(rng);  // (1, 2]
    const verify::CheckResult r = verify::check_pow_diff(a, b, gamma, 1e-12);
    if (!r.pass) ++failures;
    if (r.rhs > 0.0) worst = std::max(worst, (r.lhs - r.rhs) / r.rhs);
  }
  return {failures == 0, format("%zu failures in %zu samples, max (lhs-rhs)/rhs = %.3g",
                                failures, n, worst)};
}

Scenario eigen_scenario(int n, double dt) {
  const GridSpec g = GridSpec::unit_square(n);
  Scenario s(g);
  s.g = eigenmode(g);
  s.dt = dt;
  s.horizon = 0.01;
  s.linear_tol = 1e-13;
  return s;
}

Outcome heat_step_correctness() {
  const double t = 0.01;
  const double exact_decay = std::exp(-2.0 * kPi * kPi * t);

  struct Run {
    ScalarField coarse_dt;
    ScalarField fine_dt;
  };
  auto solve = [](int n) {
    return Run{pure_heat_flow(eigen_scenario(n, 1e-4)).back(),
               pure_heat_flow(eigen_scenario(n, 5e-5)).back()};
  };
  const Run h64 = solve(65);
  const Run h128 = solve(129);

  const ScalarField g64 = eigenmode(GridSpec::unit_square(65));
  const ScalarField g128 = eigenmode(GridSpec::unit_square(129));
  const double total = relative_l2(h64.coarse_dt, exact_decay * g64);

  // Time component: the eigenmode is an exact eigenvector of the five-point
  // Laplacian, so the semi-discrete solution is exp(-lambda_h t) g.
  const double h = 1.0 / 64.0;
  const double lambda_h = 2.0 * 4.0 / (h * h) * std::pow(std::sin(kPi * h / 2.0), 2);
  const ScalarField semi = std::exp(-lambda_h * t) * g64;
  const double time_coarse = relative_l2(h64.coarse_dt, semi);
  const double time_fine = relative_l2(h64.fine_dt, semi);
  const double time_ratio = time_coarse / time_fine;

  // Space component: Richardson extrapolation in dt removes the first-order
  // time error; what remains is compared with the continuous solution.
  const double space_64 = relative_l2(2.0 * h64.fine_dt - h64.coarse_dt, exact_decay * g64);
  const double space_128 = relative_l2(2.0 * h128.fine_dt - h128.coarse_dt, exact_decay * g128);
  const double space_ratio = space_64 / space_128;

  const bool pass = total <= 0.02 && std::abs(time_ratio - 2.0) <= 0.4 &&
                    std::abs(space_ratio - 4.0) <= 0.8;
  return {pass, format("L2 error %.3g%%, time ratio %.3f (dt halved), space ratio %.3f (h halved)",
                       100.0 * total, time_ratio, space_ratio)};
}

Outcome fixed_point_behavior() {
  Scenario s = small_data_scenario(33);
  s.dt = 0.01;
  s.horizon = default_Tstar(s);
  s.picard_tol = 1e-12;
  const ShortTimeSolution sol = solve_short_time(s);
  const auto& r = sol.report.residuals;
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (r[k - 1] > 0.0) worst_ratio = std::max(worst_ratio, r[k] / r[k - 1]);
  }
  const bool pass = sol.report.converged && worst_ratio < 0.9 && sol.report.iterations <= 15;
  return {pass, format("T = %.4g, converged %s in %d iterations, max residual ratio %.3g",
                       s.horizon, sol.report.converged ? "true" : "false",
                       sol.report.iterations, worst_ratio)};
}

Outcome gluing_exactness() {
  Scenario s = small_data_scenario(17);
  s.dt = 0.01;
  const double tstar = default_Tstar(s);

  app::RunConfig config;
  config.command = app::Subcommand::global;
  config.scenario = s;
  config.spec.run.chunk_length = tstar;
  config.global_horizon = 5.0 * tstar;
  config.out_dir = scratch("gluing");
  std::ostringstream log;
  const int code = app::run(config, log);

  ChunkPlan plan;
  plan.chunk_length = tstar;
  const GlobalSolution global = solve_global(s, 5.0 * tstar, plan);

  std::istringstream diag(slurp(config.out_dir / "diagnostics.csv"));
  std::string line;
  std::getline(diag, line);
  int rows = 0;
  int nonzero = 0;
  while (std::getline(diag, line)) {
    std::istringstream cells(line);
    std::string cell;
    for (int c = 0; c <= 8; ++c) std::getline(cells, cell, ',');
    if (std::stod(cell) != 0.0) ++nonzero;
    ++rows;
  }
  fs::remove_all(config.out_dir);

  Scenario heat(GridSpec::unit_square(33));
  heat.g = eigenmode(heat.grid);
  heat.dt = 0.01;
  heat.horizon = 0.1;
  Scenario second = heat;
  const Trajectory first = pure_heat_flow(heat);
  second.g = first.back();
  second.t0 = first.t_end();
  const Trajectory glued = glue(first, pure_heat_flow(second));
  Scenario whole = heat;
  whole.horizon = 0.2;
  const ScalarField reference = pure_heat_flow(whole).back();
  const double gap = relative_l2(glued.back(), reference);

  const bool all_zero =
      std::all_of(global.plan.junction_jumps.begin(), global.plan.junction_jumps.end(),
                  [](double j) { return j == 0.0; });
  const bool pass = code == app::kExitSuccess && global.plan.reports.size() == 5 && all_zero &&
                    nonzero == 0 && rows == global.trajectory.steps() + 1 &&
                    gap <= 10.0 * heat.linear_tol;
  return {pass, format("%zu chunks, %d of %d junction_jump entries nonzero, "
                       "2-chunk vs 1-chunk relative gap %.3g (limit %.3g)",
                       global.plan.reports.size(), nonzero, rows, gap, 10.0 * heat.linear_tol)};
}

Outcome gamma_continuation_check() {
  const std::vector<double> gammas{1.5, 1.25, 1.1, 1.05};
  const Scenario s = small_data_scenario(33);
  const ContinuationResult r = gamma_continuation(s, gammas);
  const auto& d = r.report.differences;
  bool decreasing = d.size() == 3 && d.front() > 0.0;
  for (std::size_t k = 1; k < d.size(); ++k) decreasing = decreasing && d[k] < d[k - 1];

  Scenario flat = s;
  flat.beta = BetaFunction::constant(0.0);
  const ContinuationResult z = gamma_continuation(flat, gammas);
  const bool zero = std::all_of(z.report.differences.begin(), z.report.differences.end(),
                                [](double v) { return v == 0.0; });
  return {decreasing && zero,
          format("smallness %.3g, d = %.3g, %.3g, %.3g; beta = 0 gives %s", r.report.smallness(),
                 d.size() > 0 ? d[0] : NAN, d.size() > 1 ? d[1] : NAN, d.size() > 2 ? d[2] : NAN,
                 zero ? "exact zeros" : "nonzero differences")};
}

Outcome regularity_monitor() {
  std::vector<double> ratios;
  for (double horizon : {0.1, 0.25, 0.5, 1.0}) {
    Scenario s = small_data_scenario(33);
    s.dt = 0.005;
    s.horizon = horizon;
    s.picard_tol = 1e-10;
    const ShortTimeSolution sol = solve_short_time(s);
    if (!sol.report.converged) return {false, format("nonconverged at T = %g", horizon)};
    ratios.push_back(sol.report.regularity_ratio);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double spread = (*hi - *lo) / *lo;
  return {spread < 0.25, format("ratios %.4f, %.4f, %.4f, %.4f; spread %.2f%%", ratios[0],
                                ratios[1], ratios[2], ratios[3], 100.0 * spread)};
}

Outcome front_extraction() {
  const GridSpec g = GridSpec::unit_square(65);
  const ScalarField u = ScalarField::from_function(g, [](double x, double y) {
    return 1.0 - ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)) * 8.0;
  });
  const app::FrontContour front = app::extract_front(u, ScalarField(g, 0.5));
  double worst = 0.0;
  std::size_t points = 0;
  for (const auto& line : front.polylines) {
    for (const app::Point& p : line) {
      worst = std::max(worst, std::abs(std::hypot(p.x - 0.5, p.y - 0.5) - 0.25));
      ++points;
    }
  }
  const bool closed = front.polylines.size() == 1 &&
                      front.polylines[0].front() == front.polylines[0].back();
  return {closed && worst <= 2.0 * g.hx(),
          format("%zu polyline(s), %zu points, max radial deviation %.3g (limit %.3g)",
                 front.polylines.size(), points, worst, 2.0 * g.hx())};
}

Outcome determinism() {
  struct Case {
    std::string name;
    app::RunConfig config;
    std::string file;
  };
  std::vector<Case> cases;
  auto scenario_case = [&](const std::string& name, app::Subcommand command) {
    app::RunConfig c;
    c.command = command;
    Scenario s = small_data_scenario(17);
    c.scenario = s;
    c.cadence = 5;
    if (command == app::Subcommand::global) {
      c.spec.run.chunk_length = 0.03;
      c.global_horizon = 0.1;
    }
    if (command == app::Subcommand::continuation) c.gammas = {1.5, 1.25, 1.1, 1.05};
    cases.push_back({name, c, "diagnostics.csv"});
  };
  scenario_case("simulate", app::Subcommand::simulate);
  scenario_case("global", app::Subcommand::global);
  scenario_case("continue", app::Subcommand::continuation);
  app::RunConfig v;
  v.command = app::Subcommand::verify;
  v.verify_count = 200;
  cases.push_back({"verify", v, "verify.csv"});

  std::string detail;
  bool pass = true;
  for (Case& c : cases) {
    std::string bytes[2];
    for (int rep = 0; rep < 2; ++rep) {
      c.config.out_dir = scratch("determinism_" + c.name + std::to_string(rep));
      std::ostringstream log;
      const int code = app::run(c.config, log);
      bytes[rep] = slurp(c.config.out_dir / c.file);
      fs::remove_all(c.config.out_dir);
      pass = pass && code == app::kExitSuccess;
    }
    const bool same = !bytes[0].empty() && bytes[0] == bytes[1];
    pass = pass && same;
    detail += (detail.empty() ? "" : ", ") + c.name + (same ? " identical" : " DIFFERENT");
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"toolbox inequality suite", toolbox_suite},
      {"power-difference inequality", power_difference},
      {"heat-step correctness", heat_step_correctness},
      {"fixed-point behavior", fixed_point_behavior},
      {"gluing exactness", gluing_exactness},
      {"gamma continuation", gamma_continuation_check},
      {"regularity-estimate monitor", regularity_monitor},
      {"front extraction", front_extraction},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << k + 1 << " " << criteria[k].first << ": "
              << o.detail << " [" << format("%.2f", seconds) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
