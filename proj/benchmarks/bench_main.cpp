#include <benchmark/benchmark.h>

#include <cmath>

#include "bushfire/global.hpp"
#include "bushfire/solver.hpp"

namespace {

using namespace bushfire;

ScalarField bump(const GridSpec& g) {
  return ScalarField::from_function(g, [](double x, double y) {
           return std::exp(-((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)) / 0.02);
         }).zero_boundary();
}

Scenario coupled(int n) {
  const GridSpec g = GridSpec::unit_square(n);
  Scenario s(g);
  s.g = bump(g);
  s.theta = TimeSampled<ScalarField>(ScalarField(g, 0.3));
  s.omega = TimeSampled<VectorField>(VectorField(g, 0.006, -0.003));
  s.kernel = Kernel::gaussian(g, 0.01, 0.05, 2);
  s.beta = BetaFunction({0.0, 0.5, 1.0}, {0.0, 0.01, 0.005});
  s.horizon = 0.1;
  s.dt = 0.01;
  return s;
}

void BM_HeatStep(benchmark::State& state) {
  const GridSpec g = GridSpec::unit_square(static_cast<int>(state.range(0)));
  const ScalarField u = bump(g);
  const ScalarField f(g, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(heat_step(u, f, 1e-3));
  state.SetComplexityN(static_cast<int64_t>(g.interior_size()));
}
BENCHMARK(BM_HeatStep)->Arg(17)->Arg(33)->Arg(65)->Arg(129)->Arg(257)->Complexity();

void BM_F1Stencil(benchmark::State& state) {
  const GridSpec g = GridSpec::unit_square(static_cast<int>(state.range(0)));
  const Kernel k = Kernel::gaussian(g, 1.0, 0.05, 3);
  const ScalarField u = bump(g);
  const ScalarField theta(g, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(f1_forcing(u, theta, k));
}
BENCHMARK(BM_F1Stencil)->Arg(17)->Arg(33)->Arg(65);

void BM_F1Dense(benchmark::State& state) {
  const GridSpec g = GridSpec::unit_square(static_cast<int>(state.range(0)));
  const Kernel k = Kernel::gaussian(g, 1.0, 0.05, 3).expanded();
  const ScalarField u = bump(g);
  const ScalarField theta(g, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(f1_forcing(u, theta, k));
}
BENCHMARK(BM_F1Dense)->Arg(17)->Arg(33)->Arg(65);

void BM_Picard(benchmark::State& state) {
  const Scenario s = coupled(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_short_time(s));
}
BENCHMARK(BM_Picard)->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);

void BM_Continuation(benchmark::State& state) {
  const Scenario s = coupled(17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_continuation(s, {1.5, 1.25, 1.1, 1.05}));
  }
}
BENCHMARK(BM_Continuation)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
