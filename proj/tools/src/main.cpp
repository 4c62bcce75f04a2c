#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bushfire/app/config.hpp"
#include "bushfire/app/run.hpp"

namespace {

using namespace bushfire::app;

struct Args {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<int> cadence;
  double horizon = 0.0;
  std::vector<double> gammas;
  std::uint64_t seed = 42;
  int grid = 17;
  std::size_t count = 1000;
};

int load(RunConfig& config, const Args& args, bool allow_linear_scaling) {
  const std::filesystem::path path(args.config_path);
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  ParseOptions opts;
  opts.allow_linear_scaling = allow_linear_scaling;
  opts.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  try {
    const RunConfig parsed = parse_config(text, opts);
    config.spec = parsed.spec;
    config.scenario = parsed.scenario;
    config.base_dir = parsed.base_dir;
    config.cadence = parsed.cadence;
  } catch (const ParseError& e) {
    std::cerr << path.string() << ": " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bushfire spread simulator"};
  app.require_subcommand(1);
  Args args;
  app.add_option("--out", args.out_dir, "Output directory")->capture_default_str();
  app.add_option("--cadence", args.cadence, "Write a snapshot every K steps")
      ->check(CLI::PositiveNumber);

  auto* simulate = app.add_subcommand("simulate", "Short-time solve on the configured horizon");
  simulate->add_option("config", args.config_path, "Scenario file")->required();

  auto* global = app.add_subcommand("global", "Chunked solve over a long horizon");
  global->add_option("config", args.config_path, "Scenario file")->required();
  global->add_option("--horizon", args.horizon, "Total simulated time")
      ->required()
      ->check(CLI::PositiveNumber);

  auto* cont = app.add_subcommand("continue", "Solve along a decreasing gamma sequence");
  cont->add_option("config", args.config_path, "Scenario file")->required();
  cont->add_option("--gammas", args.gammas, "Comma-separated, strictly decreasing")
      ->required()
      ->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Randomized inequality suite");
  verify->add_option("--seed", args.seed, "RNG seed")->capture_default_str();
  verify->add_option("--grid", args.grid, "Nodes per side")
      ->capture_default_str()
      ->check(CLI::Range(3, 4097));
  verify->add_option("--count", args.count, "Samples per checker")->capture_default_str();

  for (auto* sub : {simulate, global, cont, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  RunConfig config;
  config.out_dir = args.out_dir;
  if (*verify) {
    config.command = Subcommand::verify;
    config.seed = args.seed;
    config.verify_grid = args.grid;
    config.verify_count = args.count;
  } else {
    const bool continuation = static_cast<bool>(*cont);
    if (const int code = load(config, args, continuation); code != kExitSuccess) return code;
    if (*global) {
      config.command = Subcommand::global;
      config.global_horizon = args.horizon;
    } else if (continuation) {
      config.command = Subcommand::continuation;
      config.gammas = args.gammas;
    }
  }
  if (args.cadence) config.cadence = *args.cadence;

  return run(config, std::cerr);
}
