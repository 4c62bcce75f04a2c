#include "bushfire/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace bushfire::verify {

CheckResult make_result(std::string name, double lhs, double rhs, double rel_slack) {
  CheckResult r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.slack = rel_slack * std::max(std::abs(lhs), std::abs(rhs));
  r.pass = std::isfinite(lhs) && std::isfinite(rhs) && r.margin >= -r.slack;
  r.grid = 0;
  return r;
}

namespace {

double sup_theta_negative(const ScalarField& theta) {
  double m = 0.0;
  for (double v : theta.values()) m = std::max(m, negative_part(v));
  return m;
}

double squared(double x) { return x * x; }

}  // namespace

CheckResult check_f1_bound(const ScalarField& u, const ScalarField& theta, const Kernel& kernel,
                           double rel_slack) {
  const ScalarField f1 = f1_forcing(u, theta, kernel);
  const double lhs = inner(f1, f1);
  const double k2 = squared(kernel.l2_pairnorm());
  const double rhs =
      2.0 * k2 * (inner(u, u) + u.grid().area() * squared(sup_theta_negative(theta)));
  auto r = make_result("f1_bound", lhs, rhs, rel_slack);
  r.grid = u.grid().nx();
  return r;
}

CheckResult check_f2_bound(const ScalarField& u, const VectorField& omega,
                           const BetaFunction& beta, double gamma, double rel_slack) {
  const ScalarField f2 = f2_forcing(u, omega, beta, gamma);
  const double lhs = l2_norm(f2);
  const double grad = h1_seminorm(u);
  const double area = u.grid().area();
  const double rhs = std::sqrt(2.0) * (omega.sup_norm() * grad +
                                       beta.sup_norm() * std::pow(area, (gamma - 1.0) / 2.0) *
                                           std::pow(grad, 2.0 - gamma));
  auto r = make_result("f2_bound", lhs, rhs, rel_slack);
  r.grid = u.grid().nx();
  return r;
}

CheckResult check_f1_lipschitz(const ScalarField& u, const ScalarField& v,
                               const ScalarField& theta, const Kernel& kernel,
                               double rel_slack) {
  const double lhs = l2_norm(f1_forcing(u, theta, kernel) - f1_forcing(v, theta, kernel));
  const double rhs = kernel.l2_pairnorm() * l2_norm(u - v);
  auto r = make_result("f1_lipschitz", lhs, rhs, rel_slack);
  r.grid = u.grid().nx();
  return r;
}

double beta_holder_constant(const BetaFunction& beta, double gamma) {
  const double lip2 = squared(beta.lip_const());
  if (gamma >= 2.0) return lip2;
  const double e = (4.0 - 2.0 * gamma) / (gamma - 1.0);
  const double inner_const = std::pow(2.0, e) * std::pow(beta.sup_norm(), e) * lip2;
  return std::pow(inner_const, gamma - 1.0);
}

CheckResult check_beta_holder(const ScalarField& u, const ScalarField& v,
                              const BetaFunction& beta, double gamma, double rel_slack) {
  require_same_grid(u.grid(), v.grid(), "beta Hoelder check");
  const GridSpec& grid = u.grid();
  const VectorField grad = gradient(u);
  const double e = 2.0 * (2.0 - gamma);
  double lhs = 0.0;
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const std::size_t k = grid.index(i, j);
      const double db = beta(u[k]) - beta(v[k]);
      lhs += grid.weight(i, j) * db * db * std::pow(grad.magnitude(k), e);
    }
  }
  const double c = beta_holder_constant(beta, gamma);
  const double grad_norm = h1_seminorm(u);
  const double diff = l2_norm(u - v);
  const double rhs = c * std::pow(grad_norm, e) * std::pow(diff, 2.0 * (gamma - 1.0));
  auto r = make_result("beta_holder", lhs, rhs, rel_slack);
  r.grid = grid.nx();
  return r;
}

F2LipschitzConstant f2_lipschitz_constant(double omega_sup, const BetaFunction& beta,
                                          double gamma, double area) {
  F2LipschitzConstant c;
  c.omega_term = omega_sup;
  c.holder_term = std::sqrt(beta_holder_constant(beta, gamma));
  if (gamma < 2.0) {
    c.beta_term = beta.sup_norm() * std::pow(area, (gamma - 1.0) / 2.0);
  }
  c.value = std::sqrt(3.0) * std::max({c.omega_term, c.beta_term, c.holder_term});
  return c;
}

CheckResult check_f2_lipschitz(const ScalarField& u, const ScalarField& v,
                               const VectorField& omega, const BetaFunction& beta, double gamma,
                               double rel_slack) {
  const double lhs =
      l2_norm(f2_forcing(u, omega, beta, gamma) - f2_forcing(v, omega, beta, gamma));
  const ScalarField diff = u - v;
  const auto c = f2_lipschitz_constant(omega.sup_norm(), beta, gamma, u.grid().area());
  double rhs = 0.0;
  if (gamma < 2.0) {
    const double dgrad = h1_seminorm(diff);
    rhs = c.value * (dgrad + std::pow(dgrad, 2.0 - gamma) +
                     std::pow(h1_seminorm(u), 2.0 - gamma) *
                         std::pow(l2_norm(diff), gamma - 1.0));
  } else {
    rhs = c.value * h1_norm(diff);
  }
  auto r = make_result("f2_lipschitz", lhs, rhs, rel_slack);
  r.grid = u.grid().nx();
  return r;
}

CheckResult check_pow_diff(double a, double b, double gamma, double rel_slack) {
  const double s = 2.0 - gamma;
  const double lhs = std::abs(std::pow(a, s) - std::pow(b, s));
  const double d = std::abs(a - b);
  const double rhs = (d == 0.0 && s == 0.0) ? 1.0 : std::pow(d, s);
  return make_result("pow_diff", lhs, rhs, rel_slack);
}

CheckResult check_sublinear_young(double x, double gamma, double rel_slack) {
  const double lhs = std::pow(x, 2.0 - gamma);
  const double mid = (2.0 - gamma) * x + (gamma - 1.0);
  auto r = make_result("sublinear_young", lhs, mid, rel_slack);
  const double outer = 2.0 * x + 1.0;
  r.pass = r.pass && mid <= outer + rel_slack * std::max(std::abs(mid), outer);
  return r;
}

// Sample generation

SampleGenerator::SampleGenerator(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  rng_.seed(seq);
}

double SampleGenerator::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double SampleGenerator::log_uniform(double lo_exp, double hi_exp) {
  return std::pow(10.0, uniform(lo_exp, hi_exp));
}

ScalarField SampleGenerator::smoothed_noise(const GridSpec& grid) {
  ScalarField raw(grid);
  for (double& v : raw.values()) v = uniform(-1.0, 1.0);
  ScalarField out = raw;
  for (int j = 1; j < grid.ny() - 1; ++j) {
    for (int i = 1; i < grid.nx() - 1; ++i) {
      out(i, j) =
          (raw(i, j) + raw(i + 1, j) + raw(i - 1, j) + raw(i, j + 1) + raw(i, j - 1)) / 5.0;
    }
  }
  out *= log_uniform(-1.0, 1.0);
  return out;
}

ScalarField SampleGenerator::constrained_field(const GridSpec& grid) {
  ScalarField f = smoothed_noise(grid);
  f.zero_boundary();
  return f;
}

ScalarField SampleGenerator::free_field(const GridSpec& grid) { return smoothed_noise(grid); }

VectorField SampleGenerator::vector_field(const GridSpec& grid) {
  VectorField w(grid);
  const double scale = log_uniform(-1.0, 1.0);
  for (double& v : w.xs()) v = scale * uniform(-1.0, 1.0);
  for (double& v : w.ys()) v = scale * uniform(-1.0, 1.0);
  return w;
}

Kernel SampleGenerator::dense_kernel(const GridSpec& grid) {
  const std::size_t n = grid.interior_size();
  const double scale = log_uniform(-1.0, 1.0);
  std::vector<double> m(n * n);
  for (double& v : m) v = scale * uniform(-1.0, 1.0);
  return Kernel::dense(grid, std::move(m));
}

BetaFunction SampleGenerator::beta() {
  const int count = 2 + static_cast<int>(uniform(0.0, 5.0));
  std::vector<double> xs;
  while (static_cast<int>(xs.size()) < count) {
    const double x = uniform(-3.0, 3.0);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  const double scale = log_uniform(-1.0, 1.0);
  std::vector<double> ys(xs.size());
  for (double& y : ys) y = scale * uniform(-1.0, 1.0);
  return BetaFunction(std::move(xs), std::move(ys));
}

// Suite

const std::vector<std::string>& checker_names() {
  static const std::vector<std::string> names{"f1_bound",    "f2_bound", "f1_lipschitz",
                                              "f2_lipschitz", "beta_holder", "pow_diff",
                                              "sublinear_young"};
  return names;
}

namespace {

bool selected(const SuiteOptions& options, const std::string& name) {
  return options.checkers.empty() ||
         std::find(options.checkers.begin(), options.checkers.end(), name) !=
             options.checkers.end();
}

constexpr double kF2Gammas[] = {1.1, 1.5, 2.0};
constexpr double kHolderGammas[] = {1.25, 1.5, 1.75};

}  // namespace

std::vector<CheckResult> run_suite(const SuiteOptions& options) {
  std::vector<CheckResult> results;
  if (options.count == 0) return results;
  const auto& names = checker_names();

  for (std::size_t c = 0; c < names.size(); ++c) {
    const std::string& name = names[c];
    if (!selected(options, name)) continue;

    if (name == "pow_diff") {
      SampleGenerator gen(options.seed, c);
      for (std::size_t s = 0; s < options.count; ++s) {
        const double a = gen.uniform(0.0, 1000.0);
        const double b = gen.uniform(0.0, 1000.0);
        const double gamma = gen.uniform(1.0, 2.0);
        results.push_back(check_pow_diff(a == 0.0 ? 1e-300 : a, b == 0.0 ? 1e-300 : b, gamma));
      }
      continue;
    }
    if (name == "sublinear_young") {
      SampleGenerator gen(options.seed, c);
      for (std::size_t s = 0; s < options.count; ++s) {
        const double x = (s % 2 == 0) ? gen.uniform(0.0, 1e6) : gen.log_uniform(-6.0, 6.0);
        const double gamma = gen.uniform(1.0, 2.0);
        results.push_back(check_sublinear_young(x, gamma == 1.0 ? 2.0 : gamma));
      }
      continue;
    }

    for (int n : options.grid_sizes) {
      const GridSpec grid = GridSpec::unit_square(n);
      SampleGenerator gen(options.seed, (c << 32) | static_cast<std::uint64_t>(n));
      for (std::size_t s = 0; s < options.count; ++s) {
        if (name == "f1_bound") {
          const ScalarField u = gen.constrained_field(grid);
          const ScalarField theta = gen.free_field(grid);
          results.push_back(check_f1_bound(u, theta, gen.dense_kernel(grid)));
        } else if (name == "f2_bound") {
          const double gamma = kF2Gammas[s % 3];
          const ScalarField u = gen.constrained_field(grid);
          const VectorField omega = gen.vector_field(grid);
          results.push_back(check_f2_bound(u, omega, gen.beta(), gamma));
        } else if (name == "f1_lipschitz") {
          const ScalarField u = gen.constrained_field(grid);
          const ScalarField v = gen.constrained_field(grid);
          const ScalarField theta = gen.free_field(grid);
          results.push_back(check_f1_lipschitz(u, v, theta, gen.dense_kernel(grid)));
        } else if (name == "f2_lipschitz") {
          const double gamma = kF2Gammas[s % 3];
          const ScalarField u = gen.constrained_field(grid);
          const ScalarField v = gen.constrained_field(grid);
          const VectorField omega = gen.vector_field(grid);
          results.push_back(check_f2_lipschitz(u, v, omega, gen.beta(), gamma));
        } else if (name == "beta_holder") {
          const double gamma = kHolderGammas[s % 3];
          const ScalarField u = gen.constrained_field(grid);
          const ScalarField v = gen.constrained_field(grid);
          results.push_back(check_beta_holder(u, v, gen.beta(), gamma));
        }
      }
    }
  }
  return results;
}

std::size_t count_failures(const std::vector<CheckResult>& results) {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.pass; }));
}

void write_csv(std::ostream& out, const std::vector<CheckResult>& results, std::uint64_t seed) {
  out << "name,lhs,rhs,margin,pass,seed,grid\n";
  char buf[256];
  for (const CheckResult& r : results) {
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%d,%llu,%d\n", r.name.c_str(), r.lhs,
                  r.rhs, r.margin, r.pass ? 1 : 0, static_cast<unsigned long long>(seed), r.grid);
    out << buf;
  }
}

}  // namespace bushfire::verify
