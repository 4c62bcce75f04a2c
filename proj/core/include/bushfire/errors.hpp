#pragma once

#include <stdexcept>
#include <string>

namespace bushfire {

/// Invalid problem data: mismatched grids, out-of-range parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time or index outside the admissible interval.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An iterative method that stopped before meeting its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Two trajectories whose end and start snapshots do not coincide.
class JunctionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bushfire
