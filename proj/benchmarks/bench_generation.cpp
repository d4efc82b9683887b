#include <benchmark/benchmark.h>

#include "photocorr/detection.hpp"
#include "photocorr/experiment.hpp"
#include "photocorr/sources.hpp"

namespace {

using namespace photocorr;

void BM_CoherentTags(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_coherent_tags(1e6, kPicosPerSecond / 10, RandomSeed{1}));
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_CoherentTags);

void BM_SpdcPairs(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_spdc_pairs(1e6, 200, kPicosPerSecond / 10, RandomSeed{2}));
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SpdcPairs);

void BM_ThermalTrace(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gen_thermal_trace(1e6, 200000, 2000, kPicosPerMilli, RandomSeed{3}));
  }
  state.SetItemsProcessed(state.iterations() * 500000);
}
BENCHMARK(BM_ThermalTrace);

void BM_DetectPhotons(benchmark::State& state) {
  const auto photons = gen_coherent_tags(1e6, kPicosPerSecond / 10, RandomSeed{4});
  DetectorConfig c;
  c.efficiency = 0.04;
  c.jitter = 300;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_photons(photons, c, RandomSeed{5}, Channel::A));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(photons.size()));
}
BENCHMARK(BM_DetectPhotons);

void BM_HeraldedRun(benchmark::State& state) {
  ExperimentConfig c;
  c.run_duration = kPicosPerSecond;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_run(c, 0));
  }
}
BENCHMARK(BM_HeraldedRun)->Unit(benchmark::kMillisecond);

}  // namespace
