#pragma once

#include <vector>

#include "bushfire/errors.hpp"
#include "bushfire/model.hpp"
#include "bushfire/solver.hpp"

namespace bushfire {

/// Largest node-wise jump tolerated by glue().
inline constexpr double kJunctionTolerance = 1e-12;

/// Concatenates `a` on [t0, T1] with `b` on [T1, T2], storing the junction once.
///
/// Throws JunctionError when b does not start where a ends: start time, step
/// size, or any node of the shared snapshot differing by more than
/// kJunctionTolerance.
Trajectory glue(const Trajectory& a, const Trajectory& b);

/// Max node-wise |a.back() - b.front()|.
double junction_jump(const Trajectory& a, const Trajectory& b);

struct ChunkPlan {
  /// Nominal chunk length; chunks hold ceil(chunk_length / dt) steps.
  double chunk_length = 0.25;
  int max_halvings = 4;

  // Filled in by solve_global, one entry per accepted chunk.
  std::vector<PicardReport> reports;
  std::vector<int> chunk_steps;
  /// Times where consecutive chunks meet (strictly increasing).
  std::vector<double> junction_times;
  /// Node-wise jump measured at each junction.
  std::vector<double> junction_jumps;
  /// Number of halvings applied to each accepted chunk.
  std::vector<int> halvings_used;
};

struct GlobalSolution {
  Trajectory trajectory;
  ChunkPlan plan;
};

/// A chunk that stayed nonconverged after every allowed halving.
class ChunkFailure : public NumericalError {
 public:
  ChunkFailure(const std::string& what, GlobalSolution partial, PicardReport failing)
      : NumericalError(what, failing.residuals.empty() ? 0.0 : failing.residuals.back()),
        partial_(std::move(partial)),
        failing_(std::move(failing)) {}

  /// Everything accepted before the failing chunk.
  const GlobalSolution& partial() const noexcept { return partial_; }
  const PicardReport& failing_report() const noexcept { return failing_; }

 private:
  GlobalSolution partial_;
  PicardReport failing_;
};

/// Solves on [t0, t0 + horizon] chunk by chunk, restarting each chunk from
/// the previous endpoint and gluing. A nonconverged chunk is retried with
/// half its length, up to plan.max_halvings times; later chunks go back to
/// the nominal length. Throws ChunkFailure when the retries run out.
GlobalSolution solve_global(const Scenario& scenario, double horizon, ChunkPlan plan);

/// min(1, c / (1 + |K| + sup|omega| + sup|beta| + lip(beta))) with c = 1/4.
double default_Tstar(const Scenario& scenario);

struct ContinuationOptions {
  double eps0 = 0.05;
  /// Final difference must be at most this fraction of the last trajectory's Y-norm.
  double cauchy_tol = 0.05;
  /// Solve the per-gamma problems on separate threads.
  bool parallel = true;
};

struct ContinuationReport {
  std::vector<double> gammas;
  /// d_k = Y-distance between the solutions for gammas[k] and gammas[k+1].
  std::vector<double> differences;
  std::vector<PicardReport> reports;
  double kernel_norm = 0.0;
  double omega_sup = 0.0;
  double beta_sup = 0.0;
  double eps0 = 0.0;
  /// Differences nonincreasing over the last three and the last one small.
  bool cauchy = false;

  double smallness() const noexcept { return kernel_norm + omega_sup + beta_sup; }
};

struct ContinuationResult {
  Trajectory trajectory;
  ContinuationReport report;
};

/// Solves for each gamma in a strictly decreasing sequence approaching 1 and
/// returns the smallest-gamma trajectory as the linear-scaling candidate.
///
/// The scenario's own gamma is ignored. Throws ConfigError if
/// |K| + sup|omega| + sup|beta| exceeds options.eps0 or the sequence is not
/// admissible, and NumericalError if any per-gamma solve fails to converge.
ContinuationResult gamma_continuation(const Scenario& scenario, const std::vector<double>& gammas,
                                      const ContinuationOptions& options = {});

}  // namespace bushfire
