#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "strip/anisotropic.hpp"
#include "strip/config.hpp"
#include "strip/hydrostatic.hpp"
#include "strip/littlewood_paley.hpp"

namespace {

using namespace strip;

PhysicalField noise(const Grid& g) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  PhysicalField f(g);
  for (auto& x : f.data()) x = n(rng);
  return f;
}

RunConfig bench_config(int nx, int ny) {
  RunConfig cfg;
  cfg.grid = Grid(nx, ny);
  return cfg;
}

void BM_ForwardInverse(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const PhysicalField f = noise(g);
  for (auto _ : state) benchmark::DoNotOptimize(inverse_transform(forward_transform(f)));
}
BENCHMARK(BM_ForwardInverse)->Args({64, 129})->Args({128, 257});

void BM_BlockNorms(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)), 129);
  const DyadicPartition p(g);
  SpectralField s = forward_transform(noise(g));
  s.dealias();
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(p, s, 0.5));
}
BENCHMARK(BM_BlockNorms)->Arg(64)->Arg(256);

void BM_StepAns(benchmark::State& state) {
  const RunConfig cfg = bench_config(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  ANSConfig acfg;
  acfg.grid = cfg.grid;
  acfg.eps = 0.1;
  ANSState s = step_ans(initial_data_scaled(initial_data(cfg), acfg.eps), acfg);
  for (auto _ : state) {
    s = step_ans(s, acfg);
    benchmark::DoNotOptimize(s.u.data().data());
  }
}
BENCHMARK(BM_StepAns)->Args({64, 129})->Args({128, 257});

void BM_StepHydro(benchmark::State& state) {
  const RunConfig cfg = bench_config(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  HydroConfig hcfg;
  hcfg.grid = cfg.grid;
  HydroState s = step_hydro(initial_hydro_state(initial_data(cfg)), hcfg);
  for (auto _ : state) {
    s = step_hydro(s, hcfg);
    benchmark::DoNotOptimize(s.u.data().data());
  }
}
BENCHMARK(BM_StepHydro)->Args({64, 129})->Args({128, 257});

void BM_PressureSolveAns(benchmark::State& state) {
  const RunConfig cfg = bench_config(64, 129);
  const ANSState s = initial_data_scaled(initial_data(cfg), 0.1);
  const ANSTendency n = nonlinear_tendency_ans(s);
  for (auto _ : state) benchmark::DoNotOptimize(pressure_solve_ans(n.u, n.v, 0.05, 5e-4));
}
BENCHMARK(BM_PressureSolveAns);

}  // namespace

BENCHMARK_MAIN();
