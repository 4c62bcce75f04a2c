#include "bushfire/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bushfire/errors.hpp"

namespace bushfire {

// Trajectory

Trajectory::Trajectory(ScalarField initial, double dt, double t0) : dt_(dt), t0_(t0) {
  if (!(dt > 0.0)) throw ConfigError("trajectory step size must be positive");
  snapshots_.push_back(std::move(initial));
}

void Trajectory::push_back(ScalarField snapshot) {
  require_same_grid(grid(), snapshot.grid(), "trajectory snapshot");
  snapshots_.push_back(std::move(snapshot));
}

// Heat step

namespace {

/// y = (I - dt Laplacian_h) x on the interior block, zero data outside.
class ImplicitHeatOperator {
 public:
  ImplicitHeatOperator(const GridSpec& grid, double dt)
      : m_(grid.nx() - 2),
        n_(grid.ny() - 2),
        cx_(dt / (grid.hx() * grid.hx())),
        cy_(dt / (grid.hy() * grid.hy())),
        diag_(1.0 + 2.0 * cx_ + 2.0 * cy_) {}

  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < m_; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * m_ + i;
        double v = diag_ * x[k];
        if (i > 0) v -= cx_ * x[k - 1];
        if (i + 1 < m_) v -= cx_ * x[k + 1];
        if (j > 0) v -= cy_ * x[k - m_];
        if (j + 1 < n_) v -= cy_ * x[k + m_];
        y[k] = v;
      }
    }
  }

 private:
  int m_;
  int n_;
  double cx_;
  double cy_;
  double diag_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

ScalarField heat_step(const ScalarField& u_prev, const ScalarField& forcing, double dt,
                      const LinearSolveOptions& options) {
  if (!(dt > 0.0)) throw ConfigError("heat step: dt must be positive");
  require_same_grid(u_prev.grid(), forcing.grid(), "heat step");
  if (!u_prev.satisfies_dirichlet()) {
    throw ConfigError("heat step: previous state is nonzero on the boundary ring");
  }
  const GridSpec& grid = u_prev.grid();
  const std::size_t n = grid.interior_size();

  std::vector<double> b(n);
  std::vector<double> x(n);
  for (int j = 1; j < grid.ny() - 1; ++j) {
    for (int i = 1; i < grid.nx() - 1; ++i) {
      const std::size_t k = grid.interior_index(i, j);
      b[k] = u_prev(i, j) + dt * forcing(i, j);
      x[k] = u_prev(i, j);
    }
  }

  ScalarField out(grid);
  const double b_norm = std::sqrt(dot(b, b));
  if (b_norm == 0.0) return out;

  const ImplicitHeatOperator op(grid, dt);
  std::vector<double> r(n);
  std::vector<double> p(n);
  std::vector<double> ap(n);
  op.apply(x, ap);
  for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - ap[k];
  p = r;
  double rr = dot(r, r);
  const double target = options.tol * b_norm;

  int it = 0;
  while (std::sqrt(rr) > target) {
    if (it == options.maxit) {
      std::ostringstream msg;
      msg << "heat step: conjugate gradients stalled after " << it
          << " iterations at relative residual " << std::sqrt(rr) / b_norm;
      throw NumericalError(msg.str(), std::sqrt(rr) / b_norm);
    }
    op.apply(p, ap);
    const double alpha = rr / dot(p, ap);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    const double rr_next = dot(r, r);
    const double beta = rr_next / rr;
    for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
    rr = rr_next;
    ++it;
  }

  for (int j = 1; j < grid.ny() - 1; ++j) {
    for (int i = 1; i < grid.nx() - 1; ++i) out(i, j) = x[grid.interior_index(i, j)];
  }
  return out;
}

// Solution operator

namespace {

LinearSolveOptions linear_options(const Scenario& s) { return {s.linear_tol, s.linear_maxit}; }

void require_covers(const Trajectory& traj, const Scenario& s, const char* what) {
  require_same_grid(traj.grid(), s.grid, what);
  if (traj.steps() != s.steps() || traj.dt() != s.dt) {
    std::ostringstream msg;
    msg << what << ": trajectory has " << traj.steps() << " steps of " << traj.dt()
        << ", scenario expects " << s.steps() << " steps of " << s.dt;
    throw ConfigError(msg.str());
  }
}

}  // namespace

Trajectory pure_heat_flow(const Scenario& scenario) {
  const ScalarField zero(scenario.grid);
  const LinearSolveOptions opts = linear_options(scenario);
  Trajectory out(scenario.g, scenario.dt, scenario.t0);
  for (int m = 0; m < scenario.steps(); ++m) {
    out.push_back(heat_step(out.back(), zero, scenario.dt, opts));
  }
  return out;
}

Trajectory apply_A(const Trajectory& input, const Scenario& scenario) {
  require_covers(input, scenario, "apply_A");
  const LinearSolveOptions opts = linear_options(scenario);
  Trajectory out(scenario.g, scenario.dt, scenario.t0);
  for (int m = 0; m < scenario.steps(); ++m) {
    const ScalarField f = total_forcing(input[m], input.time(m), scenario);
    out.push_back(heat_step(out.back(), f, scenario.dt, opts));
  }
  return out;
}

ShortTimeSolution solve_short_time(const Scenario& scenario) {
  scenario.validate();
  Trajectory current = pure_heat_flow(scenario);
  PicardReport report;
  while (report.iterations < scenario.picard_maxit) {
    Trajectory next = apply_A(current, scenario);
    const double r = residual_X(next, current);
    current = std::move(next);
    ++report.iterations;
    report.residuals.push_back(r);
    if (r <= scenario.picard_tol) {
      report.converged = true;
      break;
    }
  }
  if (report.converged) report.regularity_ratio = regularity_check(current, scenario);
  return {std::move(current), std::move(report)};
}

// Norms

namespace {

void require_matching(const Trajectory& a, const Trajectory& b, const char* what) {
  require_same_grid(a.grid(), b.grid(), what);
  if (a.steps() != b.steps() || a.dt() != b.dt()) {
    std::ostringstream msg;
    msg << what << ": step counts or sizes differ (" << a.steps() << " vs " << b.steps() << ")";
    throw ConfigError(msg.str());
  }
}

}  // namespace

double residual_X(const Trajectory& a, const Trajectory& b) {
  require_matching(a, b, "residual_X");
  double sum = 0.0;
  for (int m = 1; m <= a.steps(); ++m) {
    const double h1 = h1_norm(a[m] - b[m]);
    sum += a.dt() * h1 * h1;
  }
  return std::sqrt(sum);
}

double distance_Y(const Trajectory& a, const Trajectory& b) {
  require_matching(a, b, "distance_Y");
  double sum = 0.0;
  for (int m = 1; m <= a.steps(); ++m) {
    const ScalarField d = a[m] - b[m];
    sum += a.dt() * inner(d, d);
  }
  return std::sqrt(sum);
}

double regularity_check(const Trajectory& traj, const Scenario& scenario) {
  require_covers(traj, scenario, "regularity_check");
  const double dt = traj.dt();
  double sup_h1 = 0.0;
  for (const ScalarField& u : traj.snapshots()) sup_h1 = std::max(sup_h1, h1_norm(u));

  double dudt_sq = 0.0;
  double forcing_sq = 0.0;
  for (int m = 0; m < traj.steps(); ++m) {
    ScalarField rate = traj[m + 1] - traj[m];
    rate *= 1.0 / dt;
    dudt_sq += dt * inner(rate, rate);
    const ScalarField f = total_forcing(traj[m], traj.time(m), scenario);
    forcing_sq += dt * inner(f, f);
  }
  const double denominator = std::sqrt(forcing_sq) + h1_norm(traj.front());
  if (denominator == 0.0) return 0.0;
  return (sup_h1 + std::sqrt(dudt_sq)) / denominator;
}

}  // namespace bushfire
