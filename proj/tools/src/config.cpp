#include "bushfire/app/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "bushfire/errors.hpp"

namespace bushfire::app {

namespace {

std::string join_lines(const std::vector<std::string>& problems) {
  std::string out = "config error";
  if (problems.size() > 1) out += "s";
  out += ":";
  for (const auto& p : problems) out += "\n  " + p;
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

std::optional<long long> to_integer(const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F&& fmt) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k > 0) out += ", ";
    out += fmt(xs[k]);
  }
  return out;
}

/// Collects problems and remembers where each key was set.
class Diagnostics {
 public:
  void add(int line, const std::string& message) {
    if (line > 0) {
      problems_.push_back("line " + std::to_string(line) + ": " + message);
    } else {
      problems_.push_back(message);
    }
  }
  void set_line(const std::string& section, const std::string& key, int line) {
    lines_[section + "." + key] = line;
  }
  int line_of(const std::string& section, const std::string& key) const {
    const auto it = lines_.find(section + "." + key);
    return it == lines_.end() ? 0 : it->second;
  }
  bool was_set(const std::string& section, const std::string& key) const {
    return lines_.count(section + "." + key) > 0;
  }
  /// Adds "[section] key ..." at the key's line when `ok` is false.
  void require(bool ok, const std::string& section, const std::string& key,
               const std::string& message) {
    if (!ok) add(line_of(section, key), "[" + section + "] " + key + " " + message);
  }
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
  std::map<std::string, int> lines_;
};

using Setter = std::function<bool(const std::string&)>;

Setter number(double& target) {
  return [&target](const std::string& s) {
    const auto v = to_double(s);
    if (!v || !std::isfinite(*v)) return false;
    target = *v;
    return true;
  };
}

Setter integer(int& target) {
  return [&target](const std::string& s) {
    const auto v = to_integer(s);
    if (!v || *v < -1000000000LL || *v > 1000000000LL) return false;
    target = static_cast<int>(*v);
    return true;
  };
}

Setter text(std::string& target) {
  return [&target](const std::string& s) {
    target = s;
    return true;
  };
}

Setter number_list(std::vector<double>& target) {
  return [&target](const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
      const auto v = to_double(item);
      if (!v || !std::isfinite(*v)) return false;
      out.push_back(*v);
    }
    target = std::move(out);
    return true;
  };
}

Setter text_list(std::vector<std::string>& target) {
  return [&target](const std::string& s) {
    target = split_list(s);
    return true;
  };
}

std::map<std::string, Setter> field_keys(FieldSpec& f) {
  return {{"type", text(f.type)},           {"value", number(f.value)},
          {"slope_x", number(f.slope_x)},   {"slope_y", number(f.slope_y)},
          {"amplitude", number(f.amplitude)}, {"center_x", number(f.center_x)},
          {"center_y", number(f.center_y)}, {"width", number(f.width)},
          {"mode_x", integer(f.mode_x)},    {"mode_y", integer(f.mode_y)},
          {"files", text_list(f.files)},    {"times", number_list(f.times)}};
}

std::map<std::string, std::map<std::string, Setter>> key_table(ScenarioSpec& s) {
  std::map<std::string, std::map<std::string, Setter>> t;
  t["grid"] = {{"nx", integer(s.grid.nx)},
               {"ny", integer(s.grid.ny)},
               {"lx", number(s.grid.lx)},
               {"ly", number(s.grid.ly)}};
  t["initial"] = field_keys(s.initial);
  t["theta"] = field_keys(s.theta);
  t["omega"] = {{"type", text(s.omega.type)},
                {"value_x", number(s.omega.value_x)},
                {"value_y", number(s.omega.value_y)},
                {"files", text_list(s.omega.files)},
                {"times", number_list(s.omega.times)}};
  t["kernel"] = {{"type", text(s.kernel.type)},
                 {"value", number(s.kernel.value)},
                 {"amplitude", number(s.kernel.amplitude)},
                 {"width", number(s.kernel.width)},
                 {"radius", integer(s.kernel.radius)},
                 {"file", text(s.kernel.file)}};
  t["beta"] = {{"type", text(s.beta.type)},
               {"value", number(s.beta.value)},
               {"breakpoints", number_list(s.beta.breakpoints)},
               {"values", number_list(s.beta.values)}};
  t["run"] = {{"gamma", number(s.run.gamma)},
              {"horizon", number(s.run.horizon)},
              {"dt", number(s.run.dt)},
              {"picard_tol", number(s.run.picard_tol)},
              {"picard_maxit", integer(s.run.picard_maxit)},
              {"linear_tol", number(s.run.linear_tol)},
              {"linear_maxit", integer(s.run.linear_maxit)},
              {"chunk_length", number(s.run.chunk_length)},
              {"max_halvings", integer(s.run.max_halvings)},
              {"eps0", number(s.run.eps0)},
              {"cadence", integer(s.run.cadence)}};
  return t;
}

bool one_of(const std::string& s, std::initializer_list<const char*> options) {
  for (const char* o : options) {
    if (s == o) return true;
  }
  return false;
}

void validate_samples(Diagnostics& d, const std::string& section, const std::string& type,
                      const std::vector<std::string>& files, const std::vector<double>& times,
                      bool allow_time_samples) {
  if (type != "file") return;
  d.require(!files.empty(), section, "files", "must name at least one CSV file");
  if (!allow_time_samples) {
    d.require(files.size() <= 1, section, "files", "must name exactly one file");
    d.require(times.empty(), section, "times", "is not allowed here");
    return;
  }
  if (files.size() > 1 || !times.empty()) {
    d.require(times.size() == files.size(), section, "times", "needs one time per file");
    bool increasing = true;
    for (std::size_t k = 1; k < times.size(); ++k) increasing &= times[k] > times[k - 1];
    d.require(increasing, section, "times", "must be strictly increasing");
  }
}

void validate_field(Diagnostics& d, const std::string& section, const FieldSpec& f,
                    bool allow_time_samples) {
  d.require(one_of(f.type, {"constant", "ramp", "gaussian", "paraboloid", "eigenmode", "file"}),
            section, "type",
            "= " + f.type + " is not one of constant, ramp, gaussian, paraboloid, eigenmode, file");
  if (f.type == "gaussian") d.require(f.width > 0.0, section, "width", "must be positive");
  validate_samples(d, section, f.type, f.files, f.times, allow_time_samples);
}

void validate(Diagnostics& d, const ScenarioSpec& s, const ParseOptions& options) {
  d.require(d.was_set("grid", "nx"), "grid", "nx", "is required");
  d.require(d.was_set("grid", "ny"), "grid", "ny", "is required");
  if (d.was_set("grid", "nx")) d.require(s.grid.nx >= 3, "grid", "nx", "must be at least 3");
  if (d.was_set("grid", "ny")) d.require(s.grid.ny >= 3, "grid", "ny", "must be at least 3");
  d.require(s.grid.lx > 0.0, "grid", "lx", "must be positive");
  d.require(s.grid.ly > 0.0, "grid", "ly", "must be positive");

  validate_field(d, "initial", s.initial, false);
  validate_field(d, "theta", s.theta, true);

  d.require(one_of(s.omega.type, {"constant", "file"}), "omega", "type",
            "= " + s.omega.type + " is not one of constant, file");
  validate_samples(d, "omega", s.omega.type, s.omega.files, s.omega.times, true);

  const KernelSpec& k = s.kernel;
  d.require(one_of(k.type, {"zero", "constant", "gaussian", "file"}), "kernel", "type",
            "= " + k.type + " is not one of zero, constant, gaussian, file");
  if (k.type == "gaussian") {
    d.require(k.width > 0.0, "kernel", "width", "must be positive");
    d.require(k.radius >= 0, "kernel", "radius", "must be nonnegative");
  }
  if (k.type == "file") d.require(!k.file.empty(), "kernel", "file", "must name a CSV file");

  const BetaSpec& b = s.beta;
  d.require(one_of(b.type, {"constant", "table"}), "beta", "type",
            "= " + b.type + " is not one of constant, table");
  if (b.type == "table") {
    d.require(b.breakpoints.size() >= 2, "beta", "breakpoints", "needs at least 2 entries");
    d.require(b.values.size() == b.breakpoints.size(), "beta", "values",
              "needs one value per breakpoint");
    bool increasing = true;
    for (std::size_t i = 1; i < b.breakpoints.size(); ++i) {
      increasing &= b.breakpoints[i] > b.breakpoints[i - 1];
    }
    d.require(increasing, "beta", "breakpoints", "must be strictly increasing");
  }

  const RunSpec& r = s.run;
  const bool gamma_ok = options.allow_linear_scaling ? (r.gamma >= 1.0 && r.gamma <= 2.0)
                                                     : (r.gamma > 1.0 && r.gamma <= 2.0);
  d.require(gamma_ok, "run", "gamma",
            "= " + format_double(r.gamma) + " outside the admissible range " +
                (options.allow_linear_scaling ? "[1, 2]" : "(1, 2]"));
  d.require(r.horizon > 0.0, "run", "horizon", "must be positive");
  d.require(r.dt > 0.0, "run", "dt", "must be positive");
  if (r.dt > 0.0 && r.horizon > 0.0) {
    d.require(r.dt <= r.horizon, "run", "dt", "must not exceed the horizon");
  }
  d.require(r.picard_tol > 0.0, "run", "picard_tol", "must be positive");
  d.require(r.picard_maxit >= 1, "run", "picard_maxit", "must be at least 1");
  d.require(r.linear_tol > 0.0, "run", "linear_tol", "must be positive");
  d.require(r.linear_maxit >= 1, "run", "linear_maxit", "must be at least 1");
  d.require(r.chunk_length >= 0.0, "run", "chunk_length", "must be nonnegative");
  d.require(r.max_halvings >= 0, "run", "max_halvings", "must be nonnegative");
  d.require(r.eps0 > 0.0, "run", "eps0", "must be positive");
  d.require(r.cadence >= 1, "run", "cadence", "must be at least 1");
}

// Node data files

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p : base / p;
}

/// Rows of numbers; a first line that is not numeric is treated as a header.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path) {
  const std::string content = read_text_file(path);
  std::istringstream in(content);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    bool numeric = true;
    for (const auto& cell : split_list(line)) {
      const auto v = to_double(cell);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (rows.empty() && line_no == 1) continue;
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": malformed number");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> read_node_rows(const std::filesystem::path& path,
                                                const GridSpec& grid, std::size_t columns) {
  auto rows = read_numeric_csv(path);
  if (rows.size() != grid.size()) {
    throw std::runtime_error(path.string() + ": expected " + std::to_string(grid.size()) +
                             " node rows, found " + std::to_string(rows.size()));
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != columns) {
      throw std::runtime_error(path.string() + ": row " + std::to_string(k + 1) + " needs " +
                               std::to_string(columns) + " columns");
    }
    const int i = static_cast<int>(k % grid.nx());
    const int j = static_cast<int>(k / grid.nx());
    const double tol = 1e-9 * std::max(grid.lx(), grid.ly());
    if (std::abs(rows[k][0] - grid.x(i)) > tol || std::abs(rows[k][1] - grid.y(j)) > tol) {
      throw std::runtime_error(path.string() + ": row " + std::to_string(k + 1) +
                               " coordinates do not match node (" + std::to_string(i) + ", " +
                               std::to_string(j) + ")");
    }
  }
  return rows;
}

ScalarField read_scalar_file(const std::filesystem::path& path, const GridSpec& grid) {
  const auto rows = read_node_rows(path, grid, 3);
  ScalarField f(grid);
  for (std::size_t k = 0; k < rows.size(); ++k) f[k] = rows[k][2];
  return f;
}

VectorField read_vector_file(const std::filesystem::path& path, const GridSpec& grid) {
  const auto rows = read_node_rows(path, grid, 4);
  VectorField w(grid);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    w.xs()[k] = rows[k][2];
    w.ys()[k] = rows[k][3];
  }
  return w;
}

ScalarField inline_field(const FieldSpec& f, const GridSpec& grid) {
  using std::numbers::pi;
  auto r2 = [&f](double x, double y) {
    return (x - f.center_x) * (x - f.center_x) + (y - f.center_y) * (y - f.center_y);
  };
  if (f.type == "constant") return ScalarField(grid, f.value);
  if (f.type == "ramp") {
    return ScalarField::from_function(
        grid, [&f](double x, double y) { return f.value + f.slope_x * x + f.slope_y * y; });
  }
  if (f.type == "gaussian") {
    return ScalarField::from_function(grid, [&](double x, double y) {
      return f.value + f.amplitude * std::exp(-r2(x, y) / (2.0 * f.width * f.width));
    });
  }
  if (f.type == "paraboloid") {
    return ScalarField::from_function(
        grid, [&](double x, double y) { return f.value - f.amplitude * r2(x, y); });
  }
  // eigenmode
  return ScalarField::from_function(grid, [&](double x, double y) {
    return f.amplitude * std::sin(f.mode_x * pi * x / grid.lx()) *
           std::sin(f.mode_y * pi * y / grid.ly());
  });
}

TimeSampled<ScalarField> sampled_field(const FieldSpec& f, const GridSpec& grid,
                                       const std::filesystem::path& base) {
  if (f.type != "file") return TimeSampled<ScalarField>(inline_field(f, grid));
  std::vector<ScalarField> fields;
  for (const auto& file : f.files) fields.push_back(read_scalar_file(resolve(base, file), grid));
  std::vector<double> times = f.times.empty() ? std::vector<double>{0.0} : f.times;
  return TimeSampled<ScalarField>(std::move(times), std::move(fields));
}

TimeSampled<VectorField> sampled_wind(const WindSpec& w, const GridSpec& grid,
                                      const std::filesystem::path& base) {
  if (w.type != "file") return TimeSampled<VectorField>(VectorField(grid, w.value_x, w.value_y));
  std::vector<VectorField> fields;
  for (const auto& file : w.files) fields.push_back(read_vector_file(resolve(base, file), grid));
  std::vector<double> times = w.times.empty() ? std::vector<double>{0.0} : w.times;
  return TimeSampled<VectorField>(std::move(times), std::move(fields));
}

Kernel build_kernel(const KernelSpec& k, const GridSpec& grid,
                    const std::filesystem::path& base) {
  if (k.type == "zero") return Kernel::zero(grid);
  if (k.type == "constant") {
    const std::size_t n = grid.interior_size();
    return Kernel::dense(grid, std::vector<double>(n * n, k.value));
  }
  if (k.type == "gaussian") return Kernel::gaussian(grid, k.amplitude, k.width, k.radius);
  const auto rows = read_numeric_csv(resolve(base, k.file));
  const std::size_t n = grid.interior_size();
  if (rows.size() != n) {
    throw std::runtime_error(k.file + ": expected " + std::to_string(n) + " rows, found " +
                             std::to_string(rows.size()));
  }
  std::vector<double> m;
  m.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw std::runtime_error(k.file + ": every row needs " + std::to_string(n) + " entries");
    }
    m.insert(m.end(), row.begin(), row.end());
  }
  return Kernel::dense(grid, std::move(m));
}

}  // namespace

ParseError::ParseError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ScenarioSpec parse_scenario_spec(const std::string& text, const ParseOptions& options) {
  ScenarioSpec spec;
  auto table = key_table(spec);
  Diagnostics d;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        d.add(line_no, "malformed section header '" + line + "'");
        section.clear();
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (table.count(section) == 0) {
        d.add(line_no, "unknown section [" + section + "]");
        section = "?";
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      d.add(line_no, "expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == "?") continue;
    if (section.empty()) {
      d.add(line_no, "key '" + key + "' outside any section");
      continue;
    }
    auto& keys = table[section];
    const auto it = keys.find(key);
    if (it == keys.end()) {
      d.add(line_no, "unknown key '" + key + "' in [" + section + "]");
      continue;
    }
    if (d.was_set(section, key)) {
      d.add(line_no, "[" + section + "] " + key + " set twice (first on line " +
                         std::to_string(d.line_of(section, key)) + ")");
      continue;
    }
    d.set_line(section, key, line_no);
    if (!it->second(value)) {
      d.add(line_no, "malformed value for [" + section + "] " + key + ": '" + value + "'");
    }
  }

  validate(d, spec, options);
  if (!d.problems().empty()) throw ParseError(d.problems());
  return spec;
}

Scenario build_scenario(const ScenarioSpec& spec, const ParseOptions& options) {
  try {
    const GridSpec grid(spec.grid.nx, spec.grid.ny, spec.grid.lx, spec.grid.ly);
    Scenario s(grid);
    if (spec.initial.type == "file") {
      s.g = read_scalar_file(resolve(options.base_dir, spec.initial.files.front()), grid);
    } else {
      s.g = inline_field(spec.initial, grid);
    }
    s.g.zero_boundary();
    s.theta = sampled_field(spec.theta, grid, options.base_dir);
    s.omega = sampled_wind(spec.omega, grid, options.base_dir);
    s.kernel = build_kernel(spec.kernel, grid, options.base_dir);
    s.beta = spec.beta.type == "table" ? BetaFunction(spec.beta.breakpoints, spec.beta.values)
                                       : BetaFunction::constant(spec.beta.value);
    s.gamma = spec.run.gamma;
    s.horizon = spec.run.horizon;
    s.dt = spec.run.dt;
    s.picard_tol = spec.run.picard_tol;
    s.picard_maxit = spec.run.picard_maxit;
    s.linear_tol = spec.run.linear_tol;
    s.linear_maxit = spec.run.linear_maxit;
    const auto problems = s.problems(options.allow_linear_scaling);
    if (!problems.empty()) throw ParseError(problems);
    return s;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError({e.what()});
  }
}

RunConfig parse_config(const std::string& text, const ParseOptions& options) {
  RunConfig config;
  config.spec = parse_scenario_spec(text, options);
  config.scenario = build_scenario(config.spec, options);
  config.base_dir = options.base_dir;
  config.cadence = config.spec.run.cadence;
  return config;
}

std::string serialize(const ScenarioSpec& s) {
  std::ostringstream out;
  auto num = [](double v) { return format_double(v); };
  auto str = [](const std::string& v) { return v; };
  auto field = [&](const char* name, const FieldSpec& f) {
    out << "[" << name << "]\n"
        << "type = " << f.type << "\n"
        << "value = " << num(f.value) << "\n"
        << "slope_x = " << num(f.slope_x) << "\n"
        << "slope_y = " << num(f.slope_y) << "\n"
        << "amplitude = " << num(f.amplitude) << "\n"
        << "center_x = " << num(f.center_x) << "\n"
        << "center_y = " << num(f.center_y) << "\n"
        << "width = " << num(f.width) << "\n"
        << "mode_x = " << f.mode_x << "\n"
        << "mode_y = " << f.mode_y << "\n"
        << "files = " << join(f.files, str) << "\n"
        << "times = " << join(f.times, num) << "\n\n";
  };
  out << "[grid]\n"
      << "nx = " << s.grid.nx << "\n"
      << "ny = " << s.grid.ny << "\n"
      << "lx = " << num(s.grid.lx) << "\n"
      << "ly = " << num(s.grid.ly) << "\n\n";
  field("initial", s.initial);
  field("theta", s.theta);
  out << "[omega]\n"
      << "type = " << s.omega.type << "\n"
      << "value_x = " << num(s.omega.value_x) << "\n"
      << "value_y = " << num(s.omega.value_y) << "\n"
      << "files = " << join(s.omega.files, str) << "\n"
      << "times = " << join(s.omega.times, num) << "\n\n";
  out << "[kernel]\n"
      << "type = " << s.kernel.type << "\n"
      << "value = " << num(s.kernel.value) << "\n"
      << "amplitude = " << num(s.kernel.amplitude) << "\n"
      << "width = " << num(s.kernel.width) << "\n"
      << "radius = " << s.kernel.radius << "\n"
      << "file = " << s.kernel.file << "\n\n";
  out << "[beta]\n"
      << "type = " << s.beta.type << "\n"
      << "value = " << num(s.beta.value) << "\n"
      << "breakpoints = " << join(s.beta.breakpoints, num) << "\n"
      << "values = " << join(s.beta.values, num) << "\n\n";
  const RunSpec& r = s.run;
  out << "[run]\n"
      << "gamma = " << num(r.gamma) << "\n"
      << "horizon = " << num(r.horizon) << "\n"
      << "dt = " << num(r.dt) << "\n"
      << "picard_tol = " << num(r.picard_tol) << "\n"
      << "picard_maxit = " << r.picard_maxit << "\n"
      << "linear_tol = " << num(r.linear_tol) << "\n"
      << "linear_maxit = " << r.linear_maxit << "\n"
      << "chunk_length = " << num(r.chunk_length) << "\n"
      << "max_halvings = " << r.max_halvings << "\n"
      << "eps0 = " << num(r.eps0) << "\n"
      << "cadence = " << r.cadence << "\n";
  return out.str();
}

}  // namespace bushfire::app
