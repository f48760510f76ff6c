#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>

#include "steinkit/dist/params_json.hpp"
#include "steinkit/dist/sampling.hpp"
#include "steinkit/numerics/quadrature.hpp"
#include "steinkit/numerics/rng.hpp"
#include "steinkit/specfun/bessel_k.hpp"
#include "steinkit/specfun/tricomi_u.hpp"
#include "steinkit/stein/engine.hpp"

namespace {

using namespace steinkit;

void BM_BesselK_SmallArg(benchmark::State& state) {
  double p = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_k(p, 1.3));
    p += 1e-9;
  }
}
BENCHMARK(BM_BesselK_SmallArg);

void BM_BesselK_LargeOrder(benchmark::State& state) {
  double p = 42.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_k(p, 250.0));
    p += 1e-9;
  }
}
BENCHMARK(BM_BesselK_LargeOrder);

void BM_TricomiU_Connection(benchmark::State& state) {
  double a = 2.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::tricomi_u(a, -3.2, 4.0));
    a += 1e-9;
  }
}
BENCHMARK(BM_TricomiU_Connection);

void BM_TricomiU_Wronskian(benchmark::State& state) {
  double a = 30.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::tricomi_u(a, -30.0, 18.0));
    a += 1e-9;
  }
}
BENCHMARK(BM_TricomiU_Wronskian);

void BM_QuadratureDensityNormalization(benchmark::State& state) {
  const auto pair = dist::gig_stein_pair(dist::GigParams(-1.0, 2.0, 2.0));
  const auto& log_g = pair.log_density;
  for (auto _ : state) {
    auto q = numerics::integrate([&](double x) { return std::exp(log_g(x)); },
                                 0.0, std::numeric_limits<double>::infinity(),
                                 1e-10);
    benchmark::DoNotOptimize(q.value);
  }
}
BENCHMARK(BM_QuadratureDensityNormalization);

void BM_GigSampler(benchmark::State& state) {
  const dist::GigParams prm(-1.0, 2.0, 2.0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto batch = dist::sample(prm, 1024, seed++);
    benchmark::DoNotOptimize(batch.values.data());
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_GigSampler);

void BM_KummerSampler(benchmark::State& state) {
  const dist::KummerParams prm(1.0, 1.0, 1.0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto batch = dist::sample(prm, 1024, seed++);
    benchmark::DoNotOptimize(batch.values.data());
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_KummerSampler);

void BM_PhiloxU01(benchmark::State& state) {
  numerics::RngStream rng(7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_u01());
}
BENCHMARK(BM_PhiloxU01);

void BM_SolveSteinEquation(benchmark::State& state) {
  const auto pair = dist::kummer_stein_pair(dist::KummerParams(1.0, 1.0, 1.0));
  const auto grid = stein::log_grid(1e-2, 30.0, 100);
  for (auto _ : state) {
    auto h = stein::make_test_function("exp-decay");
    auto sol = stein::solve_stein_equation(pair, h, grid);
    benchmark::DoNotOptimize(sol.max_residual);
  }
}
BENCHMARK(BM_SolveSteinEquation);

}  // namespace

BENCHMARK_MAIN();
