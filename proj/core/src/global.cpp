#include "bushfire/global.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <sstream>

namespace bushfire {

double junction_jump(const Trajectory& a, const Trajectory& b) {
  require_same_grid(a.grid(), b.grid(), "junction");
  const ScalarField& end = a.back();
  const ScalarField& start = b.front();
  double jump = 0.0;
  for (std::size_t k = 0; k < end.size(); ++k) jump = std::max(jump, std::abs(end[k] - start[k]));
  return jump;
}

Trajectory glue(const Trajectory& a, const Trajectory& b) {
  if (a.dt() != b.dt()) throw JunctionError("glue: step sizes differ");
  const double slack = 1e-9 * a.dt();
  if (std::abs(b.t0() - a.t_end()) > slack) {
    std::ostringstream msg;
    msg << "glue: second piece starts at " << b.t0() << ", first ends at " << a.t_end();
    throw JunctionError(msg.str());
  }
  const double jump = junction_jump(a, b);
  if (jump > kJunctionTolerance) {
    std::ostringstream msg;
    msg << "glue: junction snapshots differ by " << jump << " at t = " << a.t_end();
    throw JunctionError(msg.str());
  }
  Trajectory out = a;
  for (int m = 1; m <= b.steps(); ++m) out.push_back(b[m]);
  return out;
}

namespace {

int steps_for(double length, double dt) {
  return std::max(1, static_cast<int>(std::ceil(length / dt * (1.0 - 1e-12))));
}

}  // namespace

GlobalSolution solve_global(const Scenario& scenario, double horizon, ChunkPlan plan) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ConfigError("solve_global: horizon must be positive");
  }
  if (!(plan.chunk_length > 0.0)) throw ConfigError("solve_global: chunk length must be positive");
  if (plan.max_halvings < 0) throw ConfigError("solve_global: max_halvings must be nonnegative");

  const double dt = scenario.dt;
  const int total = steps_for(horizon, dt);
  const int nominal = steps_for(plan.chunk_length, dt);
  plan.reports.clear();
  plan.chunk_steps.clear();
  plan.junction_times.clear();
  plan.junction_jumps.clear();
  plan.halvings_used.clear();

  std::optional<Trajectory> glued;
  int done = 0;
  while (done < total) {
    const int wanted = std::min(nominal, total - done);
    Scenario chunk = scenario;
    chunk.t0 = scenario.t0 + done * dt;
    if (glued) chunk.g = glued->back();

    PicardReport last;
    bool accepted = false;
    int previous_steps = 0;
    for (int halving = 0; halving <= plan.max_halvings; ++halving) {
      const int steps = std::max(1, (wanted + (1 << halving) - 1) >> halving);
      if (steps == previous_steps) break;
      previous_steps = steps;
      chunk.horizon = steps * dt;
      ShortTimeSolution sol = solve_short_time(chunk);
      last = sol.report;
      if (!sol.report.converged) continue;

      if (glued) {
        plan.junction_times.push_back(sol.trajectory.t0());
        plan.junction_jumps.push_back(junction_jump(*glued, sol.trajectory));
        glued = glue(*glued, sol.trajectory);
      } else {
        glued = std::move(sol.trajectory);
      }
      plan.reports.push_back(std::move(sol.report));
      plan.chunk_steps.push_back(steps);
      plan.halvings_used.push_back(halving);
      done += steps;
      accepted = true;
      break;
    }

    if (!accepted) {
      std::ostringstream msg;
      msg << "solve_global: chunk starting at t = " << chunk.t0 << " did not converge after "
          << plan.max_halvings << " halvings";
      Trajectory partial = glued ? *glued : Trajectory(scenario.g, dt, scenario.t0);
      throw ChunkFailure(msg.str(), GlobalSolution{std::move(partial), std::move(plan)},
                         std::move(last));
    }
  }
  return {std::move(*glued), std::move(plan)};
}

double default_Tstar(const Scenario& scenario) {
  constexpr double c = 0.25;
  const double norms = scenario.kernel.l2_pairnorm() + scenario.omega_sup() +
                       scenario.beta.sup_norm() + scenario.beta.lip_const();
  return std::min(1.0, c / (1.0 + norms));
}

namespace {

double y_norm(const Trajectory& traj) {
  double sum = 0.0;
  for (int m = 1; m <= traj.steps(); ++m) sum += traj.dt() * inner(traj[m], traj[m]);
  return std::sqrt(sum);
}

void require_admissible_gammas(const std::vector<double>& gammas) {
  std::vector<std::string> problems;
  if (gammas.size() < 3) problems.emplace_back("need at least 3 gammas");
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (!(gammas[k] > 1.0 && gammas[k] <= 2.0)) {
      std::ostringstream msg;
      msg << "gamma " << gammas[k] << " outside (1, 2]";
      problems.push_back(msg.str());
    }
    if (k > 0 && !(gammas[k] < gammas[k - 1])) {
      problems.emplace_back("gammas must be strictly decreasing");
    }
  }
  if (!gammas.empty() && gammas.back() > 1.05) {
    problems.emplace_back("last gamma must be at most 1.05");
  }
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "gamma_continuation:";
  for (const auto& p : problems) msg << "\n  " << p;
  throw ConfigError(msg.str());
}

}  // namespace

ContinuationResult gamma_continuation(const Scenario& scenario, const std::vector<double>& gammas,
                                      const ContinuationOptions& options) {
  scenario.validate(/*allow_linear_scaling=*/true);
  require_admissible_gammas(gammas);

  ContinuationReport report;
  report.gammas = gammas;
  report.eps0 = options.eps0;
  report.kernel_norm = scenario.kernel.l2_pairnorm();
  report.omega_sup = scenario.omega_sup();
  report.beta_sup = scenario.beta.sup_norm();
  if (report.smallness() > options.eps0) {
    std::ostringstream msg;
    msg << "gamma_continuation: smallness gate failed, |K| = " << report.kernel_norm
        << " + sup|omega| = " << report.omega_sup << " + sup|beta| = " << report.beta_sup
        << " = " << report.smallness() << " exceeds eps0 = " << options.eps0;
    throw ConfigError(msg.str());
  }

  auto solve_for = [&scenario](double gamma) {
    Scenario s = scenario;
    s.gamma = gamma;
    return solve_short_time(s);
  };

  std::vector<ShortTimeSolution> solutions;
  solutions.reserve(gammas.size());
  if (options.parallel) {
    std::vector<std::future<ShortTimeSolution>> pending;
    pending.reserve(gammas.size());
    for (double gamma : gammas) pending.push_back(std::async(std::launch::async, solve_for, gamma));
    for (auto& f : pending) solutions.push_back(f.get());
  } else {
    for (double gamma : gammas) solutions.push_back(solve_for(gamma));
  }

  for (std::size_t k = 0; k < solutions.size(); ++k) {
    const PicardReport& r = solutions[k].report;
    if (!r.converged) {
      std::ostringstream msg;
      msg << "gamma_continuation: solve at gamma = " << gammas[k] << " did not converge in "
          << r.iterations << " sweeps";
      throw NumericalError(msg.str(), r.residuals.empty() ? 0.0 : r.residuals.back());
    }
    report.reports.push_back(r);
    if (k > 0) {
      report.differences.push_back(
          distance_Y(solutions[k - 1].trajectory, solutions[k].trajectory));
    }
  }

  const auto& d = report.differences;
  const std::size_t n = d.size();
  bool nonincreasing = true;
  for (std::size_t k = (n >= 3 ? n - 2 : 1); k < n; ++k) nonincreasing &= d[k] <= d[k - 1];
  const double scale = y_norm(solutions.back().trajectory);
  report.cauchy = nonincreasing && d.back() <= options.cauchy_tol * scale;

  return {std::move(solutions.back().trajectory), std::move(report)};
}

}  // namespace bushfire
