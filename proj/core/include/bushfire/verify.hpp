#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "bushfire/grid.hpp"
#include "bushfire/model.hpp"

namespace bushfire::verify {

/// Default relative slack for the field inequalities.
inline constexpr double kFieldSlack = 1e-10;
/// Default relative slack for the scalar power-difference inequality.
inline constexpr double kPowDiffSlack = 1e-12;

/// Outcome of one inequality evaluation, lhs <= rhs.
struct CheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double slack = 0.0;   // absolute slack actually applied
  bool pass = false;
  int grid = 0;  // nodes per side for field checks, 0 for scalar checks
};

/// Builds a result with absolute slack rel_slack * max(|lhs|, |rhs|).
CheckResult make_result(std::string name, double lhs, double rhs, double rel_slack);

/// |f1|^2 <= 2 |K|^2 (|u|^2 + |Omega| sup(theta_-)^2).
CheckResult check_f1_bound(const ScalarField& u, const ScalarField& theta, const Kernel& kernel,
                           double rel_slack = kFieldSlack);

/// |f2| <= sqrt(2) (sup|omega| |grad u| + sup|beta| |Omega|^((gamma-1)/2) |grad u|^(2-gamma)).
CheckResult check_f2_bound(const ScalarField& u, const VectorField& omega,
                           const BetaFunction& beta, double gamma,
                           double rel_slack = kFieldSlack);

/// |f1(u) - f1(v)| <= |K| |u - v|.
CheckResult check_f1_lipschitz(const ScalarField& u, const ScalarField& v,
                               const ScalarField& theta, const Kernel& kernel,
                               double rel_slack = kFieldSlack);

/// Constant of the weighted Hoelder estimate on beta(u) - beta(v):
/// (2^((4-2g)/(g-1)) sup|beta|^((4-2g)/(g-1)) lip(beta)^2)^(g-1), and lip^2 at g = 2.
double beta_holder_constant(const BetaFunction& beta, double gamma);

/// int |beta(u) - beta(v)|^2 |grad u|^(2(2-gamma))
///   <= C |grad u|^(2(2-gamma)) |u - v|^(2(gamma-1)), C = beta_holder_constant.
CheckResult check_beta_holder(const ScalarField& u, const ScalarField& v,
                              const BetaFunction& beta, double gamma,
                              double rel_slack = kFieldSlack);

/// Pieces of the Lipschitz constant for f2.
///
/// Squaring the pointwise three-term split gives a factor 3 in front of
///   sup|omega|^2, sup|beta|^2 |Omega|^(gamma-1), and the Hoelder constant;
/// C is sqrt(3) times the largest square root. At gamma = 2 the middle term
/// vanishes and the Hoelder constant reduces to lip(beta)^2.
struct F2LipschitzConstant {
  double omega_term = 0.0;
  double beta_term = 0.0;
  double holder_term = 0.0;
  double value = 0.0;
};

F2LipschitzConstant f2_lipschitz_constant(double omega_sup, const BetaFunction& beta,
                                          double gamma, double area);

/// For gamma in (1, 2):
///   |f2(u) - f2(v)| <= C (|grad(u-v)| + |grad(u-v)|^(2-gamma) + |grad u|^(2-gamma) |u-v|^(gamma-1)),
/// and for gamma = 2: |f2(u) - f2(v)| <= C |u - v|_H1.
///
/// At gamma = 2 the bound assumes neither discrete gradient vanishes at an
/// interior node, where the zero convention of f2 switches the beta term off.
CheckResult check_f2_lipschitz(const ScalarField& u, const ScalarField& v,
                               const VectorField& omega, const BetaFunction& beta, double gamma,
                               double rel_slack = kFieldSlack);

/// |a^(2-gamma) - b^(2-gamma)| <= |a - b|^(2-gamma), with 0^0 = 1 on the right.
CheckResult check_pow_diff(double a, double b, double gamma, double rel_slack = kPowDiffSlack);

/// x^(2-gamma) <= (2-gamma) x + (gamma-1) <= 2x + 1 for x >= 0.
/// lhs and rhs report the first inequality; pass requires both.
CheckResult check_sublinear_young(double x, double gamma, double rel_slack = kFieldSlack);

/// Random inputs for the checkers. Deterministic for a given seed.
class SampleGenerator {
 public:
  explicit SampleGenerator(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform(double lo, double hi);
  /// 10^uniform(lo_exp, hi_exp).
  double log_uniform(double lo_exp, double hi_exp);

  /// Uniform [-1, 1] node values, one 5-point averaging pass, zero boundary,
  /// times a random magnitude.
  ScalarField constrained_field(const GridSpec& grid);
  /// Same recipe without the boundary constraint (thresholds).
  ScalarField free_field(const GridSpec& grid);
  VectorField vector_field(const GridSpec& grid);
  /// Dense kernel with independent uniform entries of random magnitude.
  Kernel dense_kernel(const GridSpec& grid);
  /// Piecewise-linear table with 2 to 6 breakpoints.
  BetaFunction beta();

 private:
  ScalarField smoothed_noise(const GridSpec& grid);

  std::mt19937_64 rng_;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::vector<int> grid_sizes{17};
  /// Samples per checker and grid.
  std::size_t count = 1000;
  /// Restrict to these checker names; empty runs all of them.
  std::vector<std::string> checkers;
};

/// Names accepted in SuiteOptions::checkers, in run order.
const std::vector<std::string>& checker_names();

/// Runs every selected checker on randomized inputs. Field checkers run on
/// each grid size; scalar checkers run once with `count` samples.
std::vector<CheckResult> run_suite(const SuiteOptions& options);

std::size_t count_failures(const std::vector<CheckResult>& results);

/// CSV with header name,lhs,rhs,margin,pass,seed,grid.
void write_csv(std::ostream& out, const std::vector<CheckResult>& results, std::uint64_t seed);

}  // namespace bushfire::verify
