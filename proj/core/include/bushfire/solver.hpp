#pragma once

#include <vector>

#include "bushfire/grid.hpp"
#include "bushfire/model.hpp"

namespace bushfire {

/// Snapshots u^0, ..., u^M at times t0 + m * dt.
class Trajectory {
 public:
  Trajectory(ScalarField initial, double dt, double t0 = 0.0);

  void push_back(ScalarField snapshot);

  const GridSpec& grid() const noexcept { return snapshots_.front().grid(); }
  double dt() const noexcept { return dt_; }
  double t0() const noexcept { return t0_; }
  /// Number of steps M (one less than the number of snapshots).
  int steps() const noexcept { return static_cast<int>(snapshots_.size()) - 1; }
  double time(int m) const noexcept { return t0_ + m * dt_; }
  double t_end() const noexcept { return time(steps()); }

  const ScalarField& operator[](int m) const noexcept { return snapshots_[m]; }
  const ScalarField& front() const noexcept { return snapshots_.front(); }
  const ScalarField& back() const noexcept { return snapshots_.back(); }
  const std::vector<ScalarField>& snapshots() const noexcept { return snapshots_; }

 private:
  std::vector<ScalarField> snapshots_;
  double dt_;
  double t0_;
};

struct PicardReport {
  int iterations = 0;
  /// X-norm distance between consecutive iterates, one entry per sweep.
  std::vector<double> residuals;
  bool converged = false;
  double regularity_ratio = 0.0;
};

struct LinearSolveOptions {
  double tol = 1e-10;
  int maxit = 10000;
};

/// One backward-Euler step of u_t = Laplacian(u) + forcing with zero boundary data.
///
/// Solves (I - dt Laplacian_h) u_next = u_prev + dt * forcing on interior
/// nodes by conjugate gradients. Throws NumericalError if the relative
/// residual does not reach `options.tol` within `options.maxit` iterations.
ScalarField heat_step(const ScalarField& u_prev, const ScalarField& forcing, double dt,
                      const LinearSolveOptions& options = {});

/// Heat flow from the scenario's initial datum with zero forcing.
Trajectory pure_heat_flow(const Scenario& scenario);

/// One sweep of the solution operator: the forcing is frozen along `input`,
/// and the linear heat problem is re-solved from the initial datum.
Trajectory apply_A(const Trajectory& input, const Scenario& scenario);

struct ShortTimeSolution {
  Trajectory trajectory;
  PicardReport report;
};

/// Picard iteration of apply_A from the pure heat flow until the X-norm
/// residual drops to picard_tol or picard_maxit sweeps are spent.
ShortTimeSolution solve_short_time(const Scenario& scenario);

/// Discrete L2((0,T), H1) distance; right-endpoint sum over m = 1..M.
double residual_X(const Trajectory& a, const Trajectory& b);

/// Discrete L2((0,T), L2) distance; right-endpoint sum over m = 1..M.
double distance_Y(const Trajectory& a, const Trajectory& b);

/// [sup_m |u^m|_H1 + |d_t u|_Y] / [|f_u|_Y + |g|_H1], or 0 when the
/// denominator vanishes. The forcing is evaluated along `traj` itself.
double regularity_check(const Trajectory& traj, const Scenario& scenario);

}  // namespace bushfire
