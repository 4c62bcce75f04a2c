#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bushfire/model.hpp"

namespace bushfire::app {

/// Every problem found while reading a config, one line each.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Inline or file-backed scalar node data.
///
///   constant    value
///   ramp        value + slope_x * x + slope_y * y
///   gaussian    value + amplitude * exp(-r^2 / (2 width^2)), r from (center_x, center_y)
///   paraboloid  value - amplitude * r^2
///   eigenmode   amplitude * sin(mode_x pi x / lx) * sin(mode_y pi y / ly)
///   file        CSV "x,y,value" per node; several files with `times` give time samples
struct FieldSpec {
  std::string type = "constant";
  double value = 0.0;
  double slope_x = 0.0;
  double slope_y = 0.0;
  double amplitude = 1.0;
  double center_x = 0.5;
  double center_y = 0.5;
  double width = 0.1;
  int mode_x = 1;
  int mode_y = 1;
  std::vector<std::string> files;
  std::vector<double> times;

  bool operator==(const FieldSpec&) const = default;
};

/// Wind: `constant` (value_x, value_y) or `file` (CSV "x,y,wx,wy", optionally time-sampled).
struct WindSpec {
  std::string type = "constant";
  double value_x = 0.0;
  double value_y = 0.0;
  std::vector<std::string> files;
  std::vector<double> times;

  bool operator==(const WindSpec&) const = default;
};

/// Kernel: `zero`, `constant` (dense, every entry = value), `gaussian`
/// (stencil of the given node radius), or `file` (dense matrix CSV over
/// interior nodes, one row per line).
struct KernelSpec {
  std::string type = "zero";
  double value = 0.0;
  double amplitude = 0.0;
  double width = 0.1;
  int radius = 2;
  std::string file;

  bool operator==(const KernelSpec&) const = default;
};

/// Modulation: `constant` value or piecewise-linear `table`.
struct BetaSpec {
  std::string type = "constant";
  double value = 0.0;
  std::vector<double> breakpoints;
  std::vector<double> values;

  bool operator==(const BetaSpec&) const = default;
};

struct RunSpec {
  double gamma = 1.5;
  double horizon = 0.25;
  double dt = 0.01;
  double picard_tol = 1e-8;
  int picard_maxit = 50;
  double linear_tol = 1e-10;
  int linear_maxit = 10000;
  /// Nominal chunk length for global runs; 0 selects default_Tstar.
  double chunk_length = 0.0;
  int max_halvings = 4;
  double eps0 = 0.05;
  int cadence = 1;

  bool operator==(const RunSpec&) const = default;
};

struct GridSection {
  int nx = 0;
  int ny = 0;
  double lx = 1.0;
  double ly = 1.0;

  bool operator==(const GridSection&) const = default;
};

/// Everything the config file describes, before materializing fields.
struct ScenarioSpec {
  GridSection grid;
  FieldSpec initial;
  FieldSpec theta;
  WindSpec omega;
  KernelSpec kernel;
  BetaSpec beta;
  RunSpec run;

  bool operator==(const ScenarioSpec&) const = default;
};

enum class Subcommand { simulate, global, continuation, verify };

struct RunConfig {
  Subcommand command = Subcommand::simulate;
  ScenarioSpec spec;
  /// Materialized from `spec`; empty for verify runs.
  std::optional<Scenario> scenario;
  std::filesystem::path base_dir = ".";
  std::filesystem::path out_dir = "out";
  int cadence = 1;

  // Subcommand arguments.
  std::optional<double> global_horizon;
  std::vector<double> gammas;
  std::uint64_t seed = 42;
  int verify_grid = 17;
  std::size_t verify_count = 1000;
};

struct ParseOptions {
  /// Admit gamma = 1 (the continuation target).
  bool allow_linear_scaling = false;
  /// Relative file references resolve against this directory.
  std::filesystem::path base_dir = ".";
};

/// Reads the sectioned key-value format:
///
///   [grid] [initial] [theta] [omega] [kernel] [beta] [run]
///   key = value        # comment
///
/// Lists are comma-separated. Throws ParseError listing every unknown key,
/// malformed value, and violated invariant with its line.
ScenarioSpec parse_scenario_spec(const std::string& text, const ParseOptions& options = {});

/// Materializes node data; throws ParseError on unreadable files or invalid data.
Scenario build_scenario(const ScenarioSpec& spec, const ParseOptions& options = {});

/// parse_scenario_spec + build_scenario into a simulate RunConfig.
RunConfig parse_config(const std::string& text, const ParseOptions& options = {});

/// Text that parse_scenario_spec reads back to an equal spec.
std::string serialize(const ScenarioSpec& spec);

/// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace bushfire::app
