#include <benchmark/benchmark.h>

#include "unitarize/fixtures.h"
#include "unitarize/intertwine.h"
#include "unitarize/nagy.h"

namespace {

using namespace unitarize;

ConjugatedFixture fixture(Index n) {
  Rng rng(seed_from_env());
  return random_conjugated_unimodular(n, 10.0, 0.05, false, rng);
}

void BM_Eig(benchmark::State& state) {
  const auto f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eig(f.t));
}
BENCHMARK(BM_Eig)->RangeMultiplier(2)->Range(4, 64);

void BM_NagyClosedForm(benchmark::State& state) {
  const auto f = fixture(state.range(0));
  const auto h0 = HermitianForm::identity(f.t.rows());
  for (auto _ : state) benchmark::DoNotOptimize(nagy_metric(f.t, h0));
}
BENCHMARK(BM_NagyClosedForm)->RangeMultiplier(2)->Range(4, 64);

// Brute-force mean at the default horizon, for comparison with the closed form.
void BM_CesaroOracle(benchmark::State& state) {
  const auto f = fixture(state.range(0));
  const auto h0 = HermitianForm::identity(f.t.rows());
  const ToleranceConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cesaro_oracle(f.t, h0, cfg.cesaro_horizon, cfg));
  }
}
BENCHMARK(BM_CesaroOracle)->RangeMultiplier(2)->Range(4, 32);

void BM_Intertwiner(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(seed_from_env());
  const CVector spectrum = random_unimodular_spectrum(n, 0.05, rng);
  const auto a = conjugate_spectrum(spectrum, 5.0, rng);
  const auto b = conjugate_spectrum(spectrum, 5.0, rng);
  const auto h0 = HermitianForm::identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(intertwiner(a.t, b.t, h0));
}
BENCHMARK(BM_Intertwiner)->RangeMultiplier(2)->Range(4, 32);

}  // namespace

BENCHMARK_MAIN();
