#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "bushfire/grid.hpp"
#include "bushfire/model.hpp"

namespace bushfire::testing {

inline constexpr double kPi = std::numbers::pi;

inline ScalarField eigenmode(const GridSpec& g) {
  return ScalarField::from_function(
      g, [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); })
      .zero_boundary();
}

/// Node-wise uniform values in [lo, hi].
inline ScalarField random_field(const GridSpec& g, std::mt19937_64& rng, double lo = -1.0,
                                double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  ScalarField f(g);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = dist(rng);
  return f;
}

inline double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// A scenario with tiny nonlinear data on the unit square.
inline Scenario small_data_scenario(int n, double scale = 0.01) {
  const GridSpec g = GridSpec::unit_square(n);
  Scenario s(g);
  s.g = ScalarField::from_function(g, [](double x, double y) {
          return std::exp(-((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)) / 0.02);
        }).zero_boundary();
  s.theta = TimeSampled<ScalarField>(ScalarField(g, 0.3));
  s.omega = TimeSampled<VectorField>(VectorField(g, 0.6 * scale, -0.3 * scale));
  s.kernel = Kernel::gaussian(g, 1.0, 0.1, 2);
  s.kernel = s.kernel.scaled(scale / s.kernel.l2_pairnorm());
  s.beta = BetaFunction({0.0, 0.5, 1.0}, {0.0, scale, 0.5 * scale});
  s.gamma = 1.5;
  s.horizon = 0.05;
  s.dt = 0.005;
  return s;
}

}  // namespace bushfire::testing
