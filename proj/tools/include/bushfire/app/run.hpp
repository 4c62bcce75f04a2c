#pragma once

#include <iosfwd>

#include "bushfire/app/config.hpp"

namespace bushfire::app {

enum ExitCode : int {
  kExitSuccess = 0,
  /// Solver nonconvergence or failed verify checks.
  kExitFailure = 1,
  kExitConfigError = 2,
  kExitIoError = 3,
};

/// Executes the configured subcommand and writes its files under config.out_dir:
///
///   snapshots/u_NNNNNN.csv   "x,y,u" every `cadence` steps, including step 0
///   front.csv                "t,polyline_id,x,y" for the same steps
///   diagnostics.csv          one row per step
///   continuation.csv         continue only
///   verify.csv               verify only
///   summary.json             run summary
///   failure.json             on any nonzero exit
///
/// Progress and errors go to `log`.
int run(const RunConfig& config, std::ostream& log);

}  // namespace bushfire::app
