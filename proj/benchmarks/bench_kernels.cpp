#include <benchmark/benchmark.h>

#include "ktensor/analysis.hpp"
#include "ktensor/catalog.hpp"
#include "ktensor/curvature.hpp"
#include "ktensor/frame_tensor.hpp"
#include "ktensor/geodesic.hpp"
#include "ktensor/random.hpp"
#include "ktensor/residuals.hpp"
#include "ktensor/symalg.hpp"

using namespace ktensor;

// range(0) = n, range(1) = p
static void BM_SymProduct(benchmark::State& st) {
  Rng rng(1);
  const int n = static_cast<int>(st.range(0)), p = static_cast<int>(st.range(1));
  const SymTensor a = random_tensor(n, p, rng), b = random_tensor(n, p, rng);
  for (auto _ : st) benchmark::DoNotOptimize(sym_product(a, b));
}
BENCHMARK(BM_SymProduct)->Args({3, 2})->Args({4, 3})->Args({5, 4});

static void BM_StandardDecomposition(benchmark::State& st) {
  Rng rng(2);
  const SymTensor k = random_tensor(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(standard_decomposition(k));
}
BENCHMARK(BM_StandardDecomposition)->Args({3, 2})->Args({4, 4})->Args({5, 4});

static void BM_CartanDecompose(benchmark::State& st) {
  Rng rng(3);
  const FrameTensor t =
      random_trace_free_frame_tensor(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(cartan_decompose(t));
}
BENCHMARK(BM_CartanDecompose)->Args({3, 2})->Args({4, 3})->Args({5, 4});

static void BM_QR(benchmark::State& st) {
  Rng rng(4);
  const int n = static_cast<int>(st.range(0));
  auto m = sphere(n);
  const RiemannAtPoint r = m->riemann(m->sample(rng));
  const SymTensor k = random_tensor(n, static_cast<int>(st.range(1)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(qR_act(r, k));
}
BENCHMARK(BM_QR)->Args({3, 2})->Args({4, 3});

static void BM_PointResiduals(benchmark::State& st) {
  const Construction c = construct("hopf-stackel");
  Rng rng(5);
  const auto x = c.base->sample(rng);
  for (auto _ : st) benchmark::DoNotOptimize(point_residuals(c.field, x));
}
BENCHMARK(BM_PointResiduals);

static void BM_GeodesicDrift(benchmark::State& st) {
  const Construction c = construct("hopf-stackel");
  Rng rng(6);
  const GeodesicStart s = random_start(*c.base, rng);
  for (auto _ : st) benchmark::DoNotOptimize(geodesic_drift(c.field, s, 1000, 1e-3));
}
BENCHMARK(BM_GeodesicDrift)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
