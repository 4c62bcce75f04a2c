#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bushfire/errors.hpp"
#include "bushfire/grid.hpp"
#include "support.hpp"

namespace bushfire {
namespace {

using testing::eigenmode;
using testing::kPi;
using testing::random_field;
using testing::relative_gap;

TEST(GridSpec, RejectsTooFewNodesAndBadSides) {
  EXPECT_THROW(GridSpec(2, 5, 1.0, 1.0), ConfigError);
  EXPECT_THROW(GridSpec(5, 2, 1.0, 1.0), ConfigError);
  EXPECT_THROW(GridSpec(5, 5, 0.0, 1.0), ConfigError);
  EXPECT_THROW(GridSpec(5, 5, 1.0, INFINITY), ConfigError);
  EXPECT_NO_THROW(GridSpec(3, 3, 2.0, 0.5));
}

TEST(GridSpec, BoundaryAndInteriorPartitionTheNodes) {
  const GridSpec g(7, 5, 3.0, 2.0);
  std::size_t boundary = 0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) boundary += g.is_boundary(i, j) ? 1 : 0;
  }
  EXPECT_EQ(boundary + g.interior_size(), g.size());
  EXPECT_EQ(g.interior_size(), 5u * 3u);
  EXPECT_DOUBLE_EQ(g.hx(), 0.5);
  EXPECT_DOUBLE_EQ(g.hy(), 0.5);
}

TEST(ScalarField, SizeMismatchThrows) {
  const GridSpec g = GridSpec::unit_square(5);
  EXPECT_THROW(ScalarField(g, std::vector<double>(24)), ConfigError);
}

TEST(Gradient, ConstantFieldHasZeroGradient) {
  const GridSpec g = GridSpec::unit_square(9);
  const VectorField grad = gradient(ScalarField(g, 3.5));
  EXPECT_EQ(grad.sup_norm(), 0.0);
}

TEST(Gradient, LinearFieldIsExactInside) {
  const GridSpec g(11, 7, 1.0, 1.0);
  const VectorField grad = gradient(ScalarField::from_function(g, [](double x, double) {
    return x;
  }));
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      EXPECT_NEAR(grad.xs()[g.index(i, j)], 1.0, 1e-13);
      EXPECT_EQ(grad.ys()[g.index(i, j)], 0.0);
    }
  }
}

TEST(Gradient, QuadraticIsExactInsideAtQuarterSpacing) {
  const GridSpec g = GridSpec::unit_square(5);
  const ScalarField f = ScalarField::from_function(g, [](double x, double) { return x * x; });
  const VectorField grad = gradient(f);
  for (int j = 1; j < 4; ++j) {
    for (int i = 1; i < 4; ++i) {
      // (x+h)^2 - (x-h)^2 = 4xh, divided by 2h.
      EXPECT_NEAR(grad.xs()[g.index(i, j)], 2.0 * g.x(i), 1e-14);
    }
  }
}

TEST(Laplacian, ZeroFieldGivesZero) {
  const GridSpec g = GridSpec::unit_square(6);
  EXPECT_EQ(laplacian(ScalarField(g)).max_abs(), 0.0);
}

TEST(Laplacian, QuadraticGivesFourInside) {
  const GridSpec g(9, 13, 2.0, 3.0);
  const ScalarField f =
      ScalarField::from_function(g, [](double x, double y) { return x * x + y * y; });
  const ScalarField lap = laplacian(f);
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) EXPECT_NEAR(lap(i, j), 4.0, 1e-11);
  }
}

TEST(Laplacian, EigenmodeWithinTaylorBound) {
  const int n = 65;
  const GridSpec g = GridSpec::unit_square(n);
  const double h = g.hx();
  const ScalarField f = eigenmode(g);
  const ScalarField lap = laplacian(f);
  const double bound = kPi * kPi * h * h / 6.0;
  for (int j = 1; j < n - 1; ++j) {
    for (int i = 1; i < n - 1; ++i) {
      const double exact = -2.0 * kPi * kPi * f(i, j);
      EXPECT_LE(std::abs(lap(i, j) - exact), bound * std::abs(exact) + 1e-12);
    }
  }
}

TEST(Integrate, ConstantsAndLinears) {
  const GridSpec g = GridSpec::unit_square(17);
  EXPECT_EQ(integrate(ScalarField(g)), 0.0);
  EXPECT_NEAR(integrate(ScalarField(g, 1.0)), 1.0, 1e-12);
  const ScalarField x = ScalarField::from_function(g, [](double x, double) { return x; });
  EXPECT_NEAR(integrate(x), 0.5, 1e-14);
  const GridSpec r(5, 9, 3.0, 0.7);
  EXPECT_LE(relative_gap(integrate(ScalarField(r, 1.0)), 2.1), 1e-12);
}

TEST(Norms, ZeroAndOne) {
  const GridSpec g = GridSpec::unit_square(9);
  EXPECT_EQ(l2_norm(ScalarField(g)), 0.0);
  EXPECT_EQ(h1_seminorm(ScalarField(g)), 0.0);
  EXPECT_EQ(h1_norm(ScalarField(g)), 0.0);
  const ScalarField one(g, 1.0);
  EXPECT_NEAR(l2_norm(one), 1.0, 1e-14);
  EXPECT_EQ(h1_seminorm(one), 0.0);
  EXPECT_NEAR(h1_norm(one), 1.0, 1e-14);
}

TEST(Norms, EigenmodeApproachesClosedForm) {
  const GridSpec g = GridSpec::unit_square(65);
  const ScalarField f = eigenmode(g);
  EXPECT_LE(relative_gap(l2_norm(f), 0.5), 1e-3);
  EXPECT_LE(relative_gap(h1_seminorm(f), kPi / std::sqrt(2.0)), 1e-3);
}

TEST(Parts, HandValues) {
  EXPECT_EQ(positive_part(3.0), 3.0);
  EXPECT_EQ(negative_part(3.0), 0.0);
  EXPECT_EQ(positive_part(-2.0), 0.0);
  EXPECT_EQ(negative_part(-2.0), 2.0);
  EXPECT_EQ(positive_part(0.0), 0.0);
  EXPECT_EQ(negative_part(0.0), 0.0);
}

TEST(Parts, OneLipschitz) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int k = 0; k < 10000; ++k) {
    const double a = dist(rng);
    const double b = dist(rng);
    EXPECT_LE(std::abs(positive_part(a) - positive_part(b)), std::abs(a - b));
    EXPECT_LE(std::abs(negative_part(a) - negative_part(b)), std::abs(a - b));
  }
}

TEST(Properties, CauchySchwarz) {
  std::mt19937_64 rng(11);
  const GridSpec g(13, 9, 1.5, 1.0);
  for (int k = 0; k < 200; ++k) {
    const ScalarField f = random_field(g, rng);
    const ScalarField h = random_field(g, rng);
    const double lhs = inner(f, h) * inner(f, h);
    const double rhs = inner(f, f) * inner(h, h);
    EXPECT_LE(lhs, rhs * (1.0 + 1e-12));
  }
}

TEST(Properties, OperatorsAreLinear) {
  std::mt19937_64 rng(13);
  const GridSpec g = GridSpec::unit_square(11);
  const double a = 1.7;
  const double b = -0.4;
  for (int k = 0; k < 20; ++k) {
    const ScalarField f = random_field(g, rng);
    const ScalarField h = random_field(g, rng);
    const ScalarField combo = a * f + b * h;

    const ScalarField lap = laplacian(combo);
    const ScalarField lap_split = a * laplacian(f) + b * laplacian(h);
    const VectorField grad = gradient(combo);
    const VectorField gf = gradient(f);
    const VectorField gh = gradient(h);
    const double scale = std::max(lap.max_abs(), 1.0);
    for (std::size_t p = 0; p < g.size(); ++p) {
      EXPECT_LE(std::abs(lap[p] - lap_split[p]), 1e-12 * scale);
      EXPECT_LE(std::abs(grad.xs()[p] - (a * gf.xs()[p] + b * gh.xs()[p])),
                1e-12 * std::max(grad.sup_norm(), 1.0));
      EXPECT_LE(std::abs(grad.ys()[p] - (a * gf.ys()[p] + b * gh.ys()[p])),
                1e-12 * std::max(grad.sup_norm(), 1.0));
    }
  }
}

TEST(ScalarField, DirichletHelpers) {
  const GridSpec g = GridSpec::unit_square(6);
  ScalarField f(g, 2.0);
  EXPECT_FALSE(f.satisfies_dirichlet());
  f.zero_boundary();
  EXPECT_TRUE(f.satisfies_dirichlet());
  EXPECT_EQ(f(2, 3), 2.0);
}

}  // namespace
}  // namespace bushfire
