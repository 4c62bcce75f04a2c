#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bushfire/errors.hpp"
#include "bushfire/grid.hpp"

namespace bushfire {

/// Discrete interaction kernel K(x, y) over pairs of interior nodes.
///
/// The dense form stores the full interior-by-interior matrix. The stencil
/// form stores a translation-invariant window, K[p][q] = w[q - p] for offsets
/// within the radius and 0 outside, and never materializes the matrix unless
/// expanded() is called. Both share the quadrature weights of integrate().
class Kernel {
 public:
  enum class Kind { dense, stencil };

  /// K == 0.
  static Kernel zero(const GridSpec& grid);
  /// Row-major interior_size() x interior_size() matrix.
  static Kernel dense(const GridSpec& grid, std::vector<double> matrix);
  /// Samples k(x, y, x', y') at every interior pair.
  static Kernel dense_from_function(
      const GridSpec& grid, const std::function<double(double, double, double, double)>& k);
  /// Window of side 2r+1, indexed window[(dj + r) * (2r + 1) + (di + r)].
  static Kernel stencil(const GridSpec& grid, int radius, std::vector<double> window);
  /// Stencil with isotropic Gaussian weights amplitude * exp(-d^2 / (2 width^2)).
  static Kernel gaussian(const GridSpec& grid, double amplitude, double width, int radius);

  Kind kind() const noexcept { return kind_; }
  const GridSpec& grid() const noexcept { return grid_; }
  int radius() const noexcept { return radius_; }

  /// sqrt(sum_p sum_q w_p w_q K[p][q]^2), the quadrature L2(Omega x Omega) norm.
  double l2_pairnorm() const noexcept { return l2_pairnorm_; }
  bool nonnegative() const noexcept;

  /// K[p][q] for interior positions p, q.
  double entry(std::size_t p, std::size_t q) const noexcept;

  /// Dense copy with identical entries.
  Kernel expanded() const;
  Kernel scaled(double factor) const;

  /// out(x_p) = sum_q w_q density(x_q) K[p][q] at interior nodes, zero on the ring.
  ScalarField integrate_against(const ScalarField& density) const;

 private:
  Kernel(const GridSpec& grid, Kind kind, int radius,
         std::shared_ptr<const std::vector<double>> data);
  double compute_pairnorm() const;

  GridSpec grid_;
  Kind kind_;
  int radius_;
  std::shared_ptr<const std::vector<double>> data_;
  double l2_pairnorm_;
};

/// Piecewise-linear modulation with constant extension past the table ends.
class BetaFunction {
 public:
  BetaFunction(std::vector<double> breakpoints, std::vector<double> values);

  static BetaFunction constant(double value);

  double operator()(double a) const noexcept;

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double sup_norm() const noexcept { return sup_norm_; }
  double lip_const() const noexcept { return lip_const_; }

  BetaFunction scaled(double factor) const;

  friend bool operator==(const BetaFunction& a, const BetaFunction& b) {
    return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
  }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double sup_norm_ = 0.0;
  double lip_const_ = 0.0;
};

/// Piecewise-constant-in-time samples; sample k is active on [times[k], times[k+1]).
template <class Field>
class TimeSampled {
 public:
  explicit TimeSampled(Field field) : times_{0.0}, fields_{std::move(field)} {}

  TimeSampled(std::vector<double> times, std::vector<Field> fields)
      : times_(std::move(times)), fields_(std::move(fields)) {
    if (times_.empty() || times_.size() != fields_.size()) {
      throw ConfigError("time samples: need one field per sample time");
    }
    for (std::size_t k = 1; k < times_.size(); ++k) {
      if (!(times_[k] > times_[k - 1])) {
        throw ConfigError("time samples: sample times must be strictly increasing");
      }
    }
  }

  /// Sample active at time t; times before the first sample use the first.
  const Field& at(double t) const noexcept {
    std::size_t k = 0;
    while (k + 1 < times_.size() && times_[k + 1] <= t) ++k;
    return fields_[k];
  }

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Field>& fields() const noexcept { return fields_; }

 private:
  std::vector<double> times_;
  std::vector<Field> fields_;
};

/// A complete problem instance.
struct Scenario {
  explicit Scenario(const GridSpec& grid);

  GridSpec grid;
  Kernel kernel;
  TimeSampled<ScalarField> theta;
  TimeSampled<VectorField> omega;
  BetaFunction beta;
  double gamma = 1.5;
  ScalarField g;
  /// Absolute time of the initial datum; chunked runs advance it.
  double t0 = 0.0;
  double horizon = 1.0;
  double dt = 0.01;
  double picard_tol = 1e-8;
  int picard_maxit = 50;
  double linear_tol = 1e-10;
  int linear_maxit = 10000;

  /// ceil(horizon / dt), ignoring representation noise in the ratio.
  int steps() const noexcept;
  double t_end() const noexcept { return t0 + steps() * dt; }

  /// max over samples and nodes of max(-theta, 0).
  double theta_neg_sup() const noexcept;
  /// max over samples and nodes of |omega|.
  double omega_sup() const noexcept;

  /// Every violated invariant, one message each; empty when valid.
  std::vector<std::string> problems(bool allow_linear_scaling = false) const;
  /// Throws ConfigError listing problems().
  void validate(bool allow_linear_scaling = false) const;
};

/// Nonlocal ignition term: integral of (u - theta)_+ against the kernel.
ScalarField f1_forcing(const ScalarField& u, const ScalarField& theta, const Kernel& kernel);

/// Wind and pyrogenic convection term, (omega . grad u + beta(u) |grad u|^(2-gamma))_-.
///
/// The convection summand is 0 where the discrete gradient vanishes.
ScalarField f2_forcing(const ScalarField& u, const VectorField& omega, const BetaFunction& beta,
                       double gamma);

struct ForcingParts {
  ScalarField f1;
  ScalarField f2;
};

/// f1 and f2 with theta and omega sampled at time t.
ForcingParts forcing_parts(const ScalarField& u, double t, const Scenario& scenario);

/// f1 + f2 with theta and omega sampled at time t in [t0, t0 + horizon].
ScalarField total_forcing(const ScalarField& u, double t, const Scenario& scenario);

}  // namespace bushfire
