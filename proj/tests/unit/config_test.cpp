#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "bushfire/app/config.hpp"

namespace bushfire::app {
namespace {

namespace fs = std::filesystem;

const std::string kMinimal = "[grid]\nnx = 9\nny = 7\n";

std::vector<std::string> problems_of(const std::string& text, const ParseOptions& options = {}) {
  try {
    parse_scenario_spec(text, options);
  } catch (const ParseError& e) {
    return e.problems();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& lines, const std::string& needle) {
  for (const auto& l : lines) {
    if (l.find(needle) != std::string::npos) return true;
  }
  return false;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bushfire_config_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(ParseSpec, MinimalConfigUsesDefaults) {
  const ScenarioSpec s = parse_scenario_spec(kMinimal);
  EXPECT_EQ(s.grid.nx, 9);
  EXPECT_EQ(s.grid.ny, 7);
  ScenarioSpec expected;
  expected.grid.nx = 9;
  expected.grid.ny = 7;
  EXPECT_EQ(s, expected);
}

TEST(ParseSpec, CommentsListsAndWhitespace) {
  const std::string text =
      "# leading comment\n"
      "[grid]\n  nx = 5   ; trailing\n ny=5\nlx = 2.5\n\n"
      "[beta]\ntype = table\nbreakpoints = 0, 0.5 ,1\nvalues = 0,1e-2,  0.005\n";
  const ScenarioSpec s = parse_scenario_spec(text);
  EXPECT_EQ(s.grid.lx, 2.5);
  EXPECT_EQ(s.beta.breakpoints, (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(s.beta.values, (std::vector<double>{0.0, 0.01, 0.005}));
}

TEST(ParseSpec, GammaOutsideRangeIsNamed) {
  const auto problems = problems_of(kMinimal + "[run]\ngamma = 2.5\n");
  ASSERT_EQ(problems.size(), 1u);
  EXPECT_NE(problems[0].find("gamma"), std::string::npos);
  EXPECT_NE(problems[0].find("(1, 2]"), std::string::npos);
  EXPECT_NE(problems[0].find("line 5"), std::string::npos);
}

TEST(ParseSpec, LinearScalingOnlyWhenAllowed) {
  const std::string text = kMinimal + "[run]\ngamma = 1\n";
  EXPECT_FALSE(problems_of(text).empty());
  ParseOptions options;
  options.allow_linear_scaling = true;
  EXPECT_TRUE(problems_of(text, options).empty());
}

TEST(ParseSpec, CollectsEveryProblemWithItsLine) {
  const std::string text =
      "stray = 1\n"          // 1
      "[grid]\n"             // 2
      "nx = 9\n"             // 3
      "nx = 11\n"            // 4
      "colour = red\n"       // 5
      "[wind]\n"             // 6
      "speed = 3\n"          // 7
      "[run]\n"              // 8
      "dt = fast\n"          // 9
      "cadence = 0\n";       // 10
  const auto problems = problems_of(text);
  EXPECT_TRUE(any_contains(problems, "line 1: key 'stray' outside any section"));
  EXPECT_TRUE(any_contains(problems, "line 4: [grid] nx set twice (first on line 3)"));
  EXPECT_TRUE(any_contains(problems, "line 5: unknown key 'colour' in [grid]"));
  EXPECT_TRUE(any_contains(problems, "line 6: unknown section [wind]"));
  EXPECT_TRUE(any_contains(problems, "line 9: malformed value for [run] dt"));
  EXPECT_TRUE(any_contains(problems, "line 10: [run] cadence must be at least 1"));
  EXPECT_TRUE(any_contains(problems, "[grid] ny is required"));
  EXPECT_FALSE(any_contains(problems, "speed"));
  EXPECT_EQ(problems.size(), 7u);
}

TEST(ParseSpec, SemanticChecks) {
  EXPECT_TRUE(any_contains(problems_of(kMinimal + "[run]\nhorizon = 0.1\ndt = 0.2\n"),
                           "dt must not exceed the horizon"));
  EXPECT_TRUE(any_contains(problems_of(kMinimal + "[theta]\ntype = gaussian\nwidth = 0\n"),
                           "width must be positive"));
  EXPECT_TRUE(any_contains(problems_of(kMinimal + "[initial]\ntype = spiral\n"),
                           "spiral is not one of"));
  EXPECT_TRUE(any_contains(
      problems_of(kMinimal + "[beta]\ntype = table\nbreakpoints = 0, 0\nvalues = 1, 2\n"),
      "strictly increasing"));
  EXPECT_TRUE(any_contains(
      problems_of(kMinimal + "[beta]\ntype = table\nbreakpoints = 0, 1\nvalues = 1\n"),
      "one value per breakpoint"));
  EXPECT_TRUE(any_contains(problems_of(kMinimal + "[theta]\ntype = file\n"),
                           "must name at least one CSV file"));
  EXPECT_TRUE(any_contains(
      problems_of(kMinimal + "[omega]\ntype = file\nfiles = a.csv, b.csv\ntimes = 0\n"),
      "one time per file"));
  EXPECT_TRUE(any_contains(problems_of("[grid]\nnx = 2\nny = 5\n"), "at least 3"));
}

TEST(ParseSpec, ErrorMessageListsEveryProblem) {
  try {
    parse_scenario_spec("[grid]\nnx = 0\n[run]\ngamma = 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::string what = e.what();
    for (const auto& p : e.problems()) EXPECT_NE(what.find(p), std::string::npos);
    EXPECT_GE(e.problems().size(), 3u);
  }
}

ScenarioSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> pos(0.01, 2.0);
  std::uniform_int_distribution<int> n(3, 40);
  ScenarioSpec s;
  s.grid = {n(rng), n(rng), pos(rng), pos(rng)};
  const char* field_types[] = {"constant", "ramp", "gaussian", "paraboloid", "eigenmode"};
  for (FieldSpec* f : {&s.initial, &s.theta}) {
    f->type = field_types[rng() % 5];
    f->value = u(rng);
    f->slope_x = u(rng);
    f->slope_y = u(rng);
    f->amplitude = u(rng);
    f->center_x = u(rng);
    f->center_y = u(rng);
    f->width = pos(rng);
    f->mode_x = n(rng);
    f->mode_y = n(rng);
  }
  s.omega.value_x = u(rng);
  s.omega.value_y = u(rng) / 7.0;
  s.kernel.type = "gaussian";
  s.kernel.amplitude = pos(rng);
  s.kernel.width = pos(rng);
  s.kernel.radius = n(rng) / 10;
  s.beta.type = "table";
  double x = u(rng);
  for (int k = 0; k < 4; ++k) {
    s.beta.breakpoints.push_back(x);
    s.beta.values.push_back(u(rng));
    x += pos(rng);
  }
  s.run.gamma = 1.0 + pos(rng) / 2.0;
  s.run.horizon = pos(rng);
  s.run.dt = s.run.horizon / n(rng);
  s.run.picard_tol = pos(rng) * 1e-9;
  s.run.picard_maxit = n(rng);
  s.run.linear_tol = pos(rng) * 1e-12;
  s.run.linear_maxit = 1000 * n(rng);
  s.run.chunk_length = pos(rng);
  s.run.max_halvings = n(rng) / 4;
  s.run.eps0 = pos(rng);
  s.run.cadence = n(rng);
  return s;
}

TEST(Serialize, RoundTripsRandomSpecs) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    const ScenarioSpec s = random_spec(rng);
    EXPECT_EQ(parse_scenario_spec(serialize(s)), s) << serialize(s);
  }
}

TEST(Serialize, RoundTripsFileReferences) {
  ScenarioSpec s;
  s.grid.nx = 5;
  s.grid.ny = 5;
  s.theta.type = "file";
  s.theta.files = {"theta0.csv", "theta1.csv"};
  s.theta.times = {0.0, 0.5};
  s.kernel.type = "file";
  s.kernel.file = "k.csv";
  EXPECT_EQ(parse_scenario_spec(serialize(s)), s);
}

void write_node_csv(const fs::path& path, const GridSpec& g, int columns,
                    double (*value)(double, double)) {
  std::ofstream out(path);
  out << (columns == 3 ? "x,y,value\n" : "x,y,wx,wy\n");
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      char buf[128];
      const double v = value(g.x(i), g.y(j));
      if (columns == 3) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x(i), g.y(j), v);
      } else {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", g.x(i), g.y(j), v, -v);
      }
      out << buf;
    }
  }
}

TEST(BuildScenario, InlineFields) {
  const RunConfig c = parse_config(
      "[grid]\nnx = 5\nny = 5\n"
      "[initial]\ntype = constant\nvalue = 2\n"
      "[theta]\ntype = ramp\nvalue = 1\nslope_x = 2\n"
      "[omega]\nvalue_x = 0.5\nvalue_y = -0.25\n"
      "[beta]\nvalue = 0.3\n");
  ASSERT_TRUE(c.scenario.has_value());
  const Scenario& s = *c.scenario;
  EXPECT_TRUE(s.g.satisfies_dirichlet());
  EXPECT_EQ(s.g(2, 2), 2.0);
  EXPECT_DOUBLE_EQ(s.theta.at(0.0)(4, 1), 3.0);
  EXPECT_EQ(s.omega.at(0.0).xs()[7], 0.5);
  EXPECT_EQ(s.beta(12.0), 0.3);
  EXPECT_EQ(s.gamma, 1.5);
}

TEST(BuildScenario, ParaboloidAndEigenmode) {
  const RunConfig c = parse_config(
      "[grid]\nnx = 9\nny = 9\n"
      "[initial]\ntype = eigenmode\namplitude = 2\n"
      "[theta]\ntype = paraboloid\nvalue = 1\namplitude = 4\n");
  const Scenario& s = *c.scenario;
  EXPECT_NEAR(s.g(4, 4), 2.0, 1e-15);
  EXPECT_NEAR(s.theta.at(0.0)(0, 4), 0.0, 1e-15);
  EXPECT_EQ(s.theta.at(0.0)(4, 4), 1.0);
}

TEST(BuildScenario, ReadsNodeAndKernelFiles) {
  const fs::path dir = scratch_dir("files");
  const GridSpec g(4, 3, 1.5, 1.0);
  write_node_csv(dir / "g.csv", g, 3, [](double x, double y) { return x + 10.0 * y; });
  write_node_csv(dir / "t0.csv", g, 3, [](double, double) { return 0.0; });
  write_node_csv(dir / "t1.csv", g, 3, [](double, double) { return 1.0; });
  write_node_csv(dir / "w.csv", g, 4, [](double x, double) { return x; });
  {
    std::ofstream k(dir / "k.csv");
    k << "0.5,0.25\n0.25,0.5\n";
  }
  ParseOptions options;
  options.base_dir = dir;
  const RunConfig c = parse_config(
      "[grid]\nnx = 4\nny = 3\nlx = 1.5\n"
      "[initial]\ntype = file\nfiles = g.csv\n"
      "[theta]\ntype = file\nfiles = t0.csv, t1.csv\ntimes = 0, 1\n"
      "[omega]\ntype = file\nfiles = w.csv\n"
      "[kernel]\ntype = file\nfile = k.csv\n",
      options);
  const Scenario& s = *c.scenario;
  EXPECT_DOUBLE_EQ(s.g(1, 1), 0.5 + 10.0 * 0.5);
  EXPECT_EQ(s.g(0, 1), 0.0);
  EXPECT_EQ(s.theta.at(0.25)(2, 2), 0.0);
  EXPECT_EQ(s.theta.at(1.0)(2, 2), 1.0);
  EXPECT_DOUBLE_EQ(s.omega.at(0.0).ys()[g.index(2, 1)], -1.0);
  EXPECT_DOUBLE_EQ(s.kernel.entry(0, 1), 0.25);
  fs::remove_all(dir);
}

TEST(BuildScenario, BadFilesBecomeParseErrors) {
  const fs::path dir = scratch_dir("bad");
  write_node_csv(dir / "small.csv", GridSpec::unit_square(3), 3,
                 [](double, double) { return 0.0; });
  write_node_csv(dir / "shifted.csv", GridSpec(4, 4, 2.0, 1.0), 3,
                 [](double, double) { return 0.0; });
  ParseOptions options;
  options.base_dir = dir;
  const std::string head = "[grid]\nnx = 4\nny = 4\n[theta]\ntype = file\nfiles = ";
  try {
    parse_config(head + "small.csv\n", options);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("expected 16 node rows, found 9"), std::string::npos);
  }
  try {
    parse_config(head + "shifted.csv\n", options);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("coordinates do not match"), std::string::npos);
  }
  try {
    parse_config(head + "missing.csv\n", options);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.csv"), std::string::npos);
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace bushfire::app
