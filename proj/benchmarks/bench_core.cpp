#include <benchmark/benchmark.h>

#include <random>

#include "chieq/midpoint.hpp"
#include "chieq/stepper.hpp"

using namespace chieq;

namespace {

ScalarField noise_field(const GridPtr& grid, double amplitude) {
  std::mt19937_64 gen(42);
  std::vector<double> values(grid->total_points());
  for (double& v : values) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    v = amplitude * (2.0 * u - 1.0);
  }
  return ScalarField(grid, std::move(values));
}

void BM_Laplacian1D(benchmark::State& state) {
  auto grid = make_grid(1, static_cast<int>(state.range(0)), 6.283185307179586);
  auto f = noise_field(grid, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplacian(f));
  }
}
BENCHMARK(BM_Laplacian1D)->Arg(128)->Arg(512);

void BM_Laplacian2D(benchmark::State& state) {
  auto grid = make_grid(2, static_cast<int>(state.range(0)), 6.283185307179586);
  auto f = noise_field(grid, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplacian(f));
  }
}
BENCHMARK(BM_Laplacian2D)->Arg(64)->Arg(128);

void BM_GaussStep1D(benchmark::State& state) {
  auto grid = make_grid(1, 128, 6.283185307179586);
  CHParams params(1.0, 0.5, 0.0, grid);
  auto tab = gauss_tableau(static_cast<int>(state.range(0)));
  auto phi0 = noise_field(grid, 0.05);
  CHState initial{phi0, initial_q(phi0, params), 0.0};
  // Pre-relax so the benchmark measures a typical mid-run step.
  for (int i = 0; i < 5; ++i) {
    initial = step(initial, tab, 1e-3, params).state;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(initial, tab, 1e-3, params));
  }
}
BENCHMARK(BM_GaussStep1D)->Arg(2)->Arg(4)->Arg(6);

void BM_GaussStep2D(benchmark::State& state) {
  auto grid = make_grid(2, 64, 6.283185307179586);
  CHParams params(1.0, 0.5, 0.0, grid);
  auto tab = gauss_tableau(static_cast<int>(state.range(0)));
  auto phi0 = noise_field(grid, 0.05);
  CHState initial{phi0, initial_q(phi0, params), 0.0};
  for (int i = 0; i < 5; ++i) {
    initial = step(initial, tab, 1e-3, params).state;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(initial, tab, 1e-3, params));
  }
}
BENCHMARK(BM_GaussStep2D)->Arg(2)->Arg(6);

void BM_MidpointStep1D(benchmark::State& state) {
  auto grid = make_grid(1, 128, 6.283185307179586);
  CHParams params(1.0, 0.5, 0.0, grid);
  auto phi = noise_field(grid, 0.05);
  for (int i = 0; i < 5; ++i) {
    phi = step_midpoint(phi, 1e-3, params);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_midpoint(phi, 1e-3, params));
  }
}
BENCHMARK(BM_MidpointStep1D);

}  // namespace

BENCHMARK_MAIN();
