#include "bushfire/app/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bushfire/app/front.hpp"
#include "bushfire/errors.hpp"
#include "bushfire/global.hpp"
#include "bushfire/solver.hpp"
#include "bushfire/verify.hpp"

namespace bushfire::app {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* command_name(Subcommand c) {
  switch (c) {
    case Subcommand::simulate: return "simulate";
    case Subcommand::global: return "global";
    case Subcommand::continuation: return "continue";
    case Subcommand::verify: return "verify";
  }
  return "?";
}

void make_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

/// Writes the whole file or throws IoError naming the path.
template <class Body>
void write_file(const fs::path& path, Body&& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const fs::path& path, const json& j) {
  write_file(path, [&j](std::ostream& out) { out << j.dump(2) << "\n"; });
}

json report_json(const PicardReport& r) {
  return {{"iterations", r.iterations},
          {"converged", r.converged},
          {"residuals", r.residuals},
          {"regularity_ratio", r.regularity_ratio}};
}

/// A trajectory with the Picard reports of the pieces it was built from.
struct RunRecord {
  Trajectory trajectory;
  /// Evaluates the forcing for the diagnostics columns.
  Scenario scenario;
  std::vector<int> chunk_steps;
  std::vector<PicardReport> reports;
  std::vector<double> junction_jumps;
};

void write_snapshot(const fs::path& path, const ScalarField& u) {
  write_file(path, [&u](std::ostream& out) {
    const GridSpec& g = u.grid();
    out << "x,y,u\n";
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        out << fmt(g.x(i)) << ',' << fmt(g.y(j)) << ',' << fmt(u(i, j)) << '\n';
      }
    }
  });
}

void write_outputs(const RunRecord& rec, const fs::path& out_dir, int cadence) {
  const Trajectory& traj = rec.trajectory;
  Scenario diag = rec.scenario;
  diag.t0 = traj.t0();
  diag.horizon = traj.t_end() - traj.t0();

  make_directory(out_dir / "snapshots");
  for (int m = 0; m <= traj.steps(); m += cadence) {
    char name[32];
    std::snprintf(name, sizeof name, "u_%06d.csv", m);
    write_snapshot(out_dir / "snapshots" / name, traj[m]);
  }

  write_file(out_dir / "front.csv", [&](std::ostream& out) {
    out << "t,polyline_id,x,y\n";
    for (int m = 0; m <= traj.steps(); m += cadence) {
      const double t = traj.time(m);
      const FrontContour front = extract_front(traj[m], diag.theta.at(t), t);
      for (std::size_t id = 0; id < front.polylines.size(); ++id) {
        for (const Point& p : front.polylines[id]) {
          out << fmt(t) << ',' << id << ',' << fmt(p.x) << ',' << fmt(p.y) << '\n';
        }
      }
    }
  });

  write_file(out_dir / "diagnostics.csv", [&](std::ostream& out) {
    out << "step,t,l2_u,h1_u,l2_f1,l2_f2,picard_iters,picard_residual,junction_jump,"
           "regularity_ratio\n";
    std::size_t chunk = 0;
    int chunk_end = rec.chunk_steps.empty() ? traj.steps() : rec.chunk_steps.front();
    for (int m = 0; m <= traj.steps(); ++m) {
      double jump = 0.0;
      if (m > chunk_end && chunk + 1 < rec.chunk_steps.size()) {
        ++chunk;
        chunk_end += rec.chunk_steps[chunk];
      }
      if (m == chunk_end && chunk < rec.junction_jumps.size()) jump = rec.junction_jumps[chunk];
      const double t = traj.time(m);
      const ForcingParts f = forcing_parts(traj[m], t, diag);
      const PicardReport& r = rec.reports[chunk];
      const double residual = r.residuals.empty() ? 0.0 : r.residuals.back();
      out << m << ',' << fmt(t) << ',' << fmt(l2_norm(traj[m])) << ','
          << fmt(h1_norm(traj[m])) << ',' << fmt(l2_norm(f.f1)) << ',' << fmt(l2_norm(f.f2))
          << ',' << r.iterations << ',' << fmt(residual) << ',' << fmt(jump) << ','
          << fmt(r.regularity_ratio) << '\n';
    }
  });
}

json trajectory_summary(const RunRecord& rec) {
  json chunks = json::array();
  for (std::size_t k = 0; k < rec.reports.size(); ++k) {
    json c = report_json(rec.reports[k]);
    c["steps"] = rec.chunk_steps.empty() ? rec.trajectory.steps() : rec.chunk_steps[k];
    chunks.push_back(std::move(c));
  }
  return {{"t0", rec.trajectory.t0()},
          {"t_end", rec.trajectory.t_end()},
          {"dt", rec.trajectory.dt()},
          {"steps", rec.trajectory.steps()},
          {"chunks", std::move(chunks)},
          {"junction_jumps", rec.junction_jumps}};
}

struct Outcome {
  int code = kExitSuccess;
  json summary = json::object();
  json failure;  // null on success
};

Outcome run_simulate(const RunConfig& config, std::ostream& log) {
  const Scenario& s = *config.scenario;
  log << "simulate: " << s.steps() << " steps of dt = " << s.dt << "\n";
  ShortTimeSolution sol = solve_short_time(s);
  RunRecord rec{std::move(sol.trajectory), s, {}, {sol.report}, {}};
  write_outputs(rec, config.out_dir, config.cadence);

  Outcome o;
  o.summary = trajectory_summary(rec);
  if (!sol.report.converged) {
    o.code = kExitFailure;
    o.failure = {{"reason", "nonconvergence"},
                 {"message", "Picard iteration did not reach picard_tol"},
                 {"report", report_json(sol.report)}};
  }
  return o;
}

Outcome run_global(const RunConfig& config, std::ostream& log) {
  const Scenario& s = *config.scenario;
  const double horizon = config.global_horizon.value_or(s.horizon);
  ChunkPlan plan;
  plan.chunk_length =
      config.spec.run.chunk_length > 0.0 ? config.spec.run.chunk_length : default_Tstar(s);
  plan.max_halvings = config.spec.run.max_halvings;
  log << "global: horizon " << horizon << ", chunk length " << plan.chunk_length << "\n";

  auto record = [&s](GlobalSolution g) {
    return RunRecord{std::move(g.trajectory), s, std::move(g.plan.chunk_steps),
                     std::move(g.plan.reports), std::move(g.plan.junction_jumps)};
  };

  Outcome o;
  try {
    const RunRecord rec = record(solve_global(s, horizon, plan));
    write_outputs(rec, config.out_dir, config.cadence);
    o.summary = trajectory_summary(rec);
    o.summary["chunk_length"] = plan.chunk_length;
  } catch (const ChunkFailure& e) {
    o.code = kExitFailure;
    o.failure = {{"reason", "nonconvergence"},
                 {"message", e.what()},
                 {"report", report_json(e.failing_report())}};
    if (!e.partial().plan.reports.empty()) {
      const RunRecord rec = record(e.partial());
      write_outputs(rec, config.out_dir, config.cadence);
      o.summary = trajectory_summary(rec);
      o.failure["completed_until"] = rec.trajectory.t_end();
    }
  }
  return o;
}

Outcome run_continuation(const RunConfig& config, std::ostream& log) {
  const Scenario& s = *config.scenario;
  ContinuationOptions opts;
  opts.eps0 = config.spec.run.eps0;
  log << "continue: " << config.gammas.size() << " gammas\n";
  ContinuationResult res = gamma_continuation(s, config.gammas, opts);
  const ContinuationReport& r = res.report;

  Scenario last = s;
  last.gamma = r.gammas.back();
  const RunRecord rec{std::move(res.trajectory), last, {}, {r.reports.back()}, {}};
  write_outputs(rec, config.out_dir, config.cadence);

  write_file(config.out_dir / "continuation.csv", [&r](std::ostream& out) {
    out << "k,gamma_a,gamma_b,difference\n";
    for (std::size_t k = 0; k < r.differences.size(); ++k) {
      out << k << ',' << fmt(r.gammas[k]) << ',' << fmt(r.gammas[k + 1]) << ','
          << fmt(r.differences[k]) << '\n';
    }
  });

  Outcome o;
  o.summary = trajectory_summary(rec);
  json reports = json::array();
  for (const auto& pr : r.reports) reports.push_back(report_json(pr));
  o.summary["continuation"] = {{"gammas", r.gammas},
                               {"differences", r.differences},
                               {"kernel_norm", r.kernel_norm},
                               {"omega_sup", r.omega_sup},
                               {"beta_sup", r.beta_sup},
                               {"eps0", r.eps0},
                               {"cauchy", r.cauchy},
                               {"reports", std::move(reports)}};
  return o;
}

Outcome run_verify(const RunConfig& config, std::ostream& log) {
  verify::SuiteOptions opts;
  opts.seed = config.seed;
  opts.grid_sizes = {config.verify_grid};
  opts.count = config.verify_count;
  log << "verify: seed " << opts.seed << ", grid " << config.verify_grid << ", " << opts.count
      << " samples per checker\n";
  const auto results = verify::run_suite(opts);
  write_file(config.out_dir / "verify.csv",
             [&](std::ostream& out) { verify::write_csv(out, results, opts.seed); });

  const std::size_t failures = verify::count_failures(results);
  Outcome o;
  o.summary = {{"seed", opts.seed},
               {"grid", config.verify_grid},
               {"count", opts.count},
               {"checks", results.size()},
               {"failures", failures}};
  if (failures > 0) {
    json failing = json::array();
    for (const auto& c : results) {
      if (c.pass) continue;
      failing.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"grid", c.grid}});
      if (failing.size() >= 100) break;
    }
    o.code = kExitFailure;
    o.failure = {{"reason", "verify"},
                 {"message", std::to_string(failures) + " checks failed"},
                 {"failing", std::move(failing)}};
  }
  return o;
}

Outcome dispatch(const RunConfig& config, std::ostream& log) {
  if (config.command != Subcommand::verify && !config.scenario) {
    throw ConfigError(std::string(command_name(config.command)) + " needs a scenario");
  }
  if (config.cadence < 1) throw ConfigError("cadence must be at least 1");
  switch (config.command) {
    case Subcommand::simulate: return run_simulate(config, log);
    case Subcommand::global: return run_global(config, log);
    case Subcommand::continuation: return run_continuation(config, log);
    case Subcommand::verify: return run_verify(config, log);
  }
  throw ConfigError("unknown subcommand");
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
  Outcome o;
  try {
    make_directory(config.out_dir);
    std::error_code ec;
    fs::remove(config.out_dir / "failure.json", ec);
    o = dispatch(config, log);
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const ParseError& e) {
    o = {kExitConfigError, json::object(), {{"reason", "config"}, {"message", e.what()}}};
  } catch (const ConfigError& e) {
    o = {kExitConfigError, json::object(), {{"reason", "config"}, {"message", e.what()}}};
  } catch (const NumericalError& e) {
    o = {kExitFailure,
         json::object(),
         {{"reason", "nonconvergence"}, {"message", e.what()}, {"residual", e.residual()}}};
  }

  try {
    o.summary["command"] = command_name(config.command);
    o.summary["exit_code"] = o.code;
    write_json(config.out_dir / "summary.json", o.summary);
    if (!o.failure.is_null()) {
      o.failure["command"] = command_name(config.command);
      o.failure["exit_code"] = o.code;
      write_json(config.out_dir / "failure.json", o.failure);
      log << "error: " << o.failure["message"].get<std::string>() << "\n";
    }
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  return o.code;
}

}  // namespace bushfire::app
