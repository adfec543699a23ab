#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "csaot/kernels/affine.hpp"
#include "csaot/sensing/observation.hpp"
#include "csaot/sim/maps.hpp"

using namespace csaot;

namespace {

struct AffineData {
  std::vector<double> w, b, x, y;
  AffineData(std::size_t out, std::size_t in) : w(out * in), b(out), x(in), y(out) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& v : w) v = u(rng);
    for (auto& v : b) v = u(rng);
    for (auto& v : x) v = u(rng);
  }
};

// Encoder first layer of the decision agent.
constexpr std::size_t kOut = 128, kIn = 3082;

void BM_AffineSerial(benchmark::State& state) {
  AffineData d(kOut, kIn);
  for (auto _ : state) {
    kernels::affine_serial(d.w, d.b, d.x, d.y);
    benchmark::DoNotOptimize(d.y.data());
  }
}
BENCHMARK(BM_AffineSerial);

void BM_AffineOmp(benchmark::State& state) {
  AffineData d(kOut, kIn);
  for (auto _ : state) {
    kernels::affine_omp(d.w, d.b, d.x, d.y);
    benchmark::DoNotOptimize(d.y.data());
  }
}
BENCHMARK(BM_AffineOmp);

void BM_AffineGradParamsSerial(benchmark::State& state) {
  AffineData d(kOut, kIn);
  std::vector<double> gw(kOut * kIn), gb(kOut);
  for (auto _ : state) {
    kernels::affine_grad_params_serial(d.b, d.x, gw, gb);
    benchmark::DoNotOptimize(gw.data());
  }
}
BENCHMARK(BM_AffineGradParamsSerial);

void BM_AffineGradParamsOmp(benchmark::State& state) {
  AffineData d(kOut, kIn);
  std::vector<double> gw(kOut * kIn), gb(kOut);
  for (auto _ : state) {
    kernels::affine_grad_params_omp(d.b, d.x, gw, gb);
    benchmark::DoNotOptimize(gw.data());
  }
}
BENCHMARK(BM_AffineGradParamsOmp);

sim::WorldState complex_state() {
  const sim::World world(sim::builtin_map("Complex"), sim::VehicleParams{});
  return world.reset(3);
}

void BM_RasterSerial(benchmark::State& state) {
  const auto s = complex_state();
  const sensing::RasterSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(sensing::render_raster_serial(s, spec));
}
BENCHMARK(BM_RasterSerial);

void BM_RasterOmp(benchmark::State& state) {
  const auto s = complex_state();
  const sensing::RasterSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(sensing::render_raster(s, spec));
}
BENCHMARK(BM_RasterOmp);

}  // namespace

BENCHMARK_MAIN();
