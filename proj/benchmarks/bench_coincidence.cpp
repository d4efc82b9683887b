#include <benchmark/benchmark.h>

#include "photocorr/coincidence.hpp"
#include "photocorr/sources.hpp"

namespace {

using namespace photocorr;

// Independent streams at `rate` over one second.
std::pair<TimeTagStream, TimeTagStream> streams(double rate) {
  return {gen_coherent_tags(rate, kPicosPerSecond, RandomSeed{1}, Channel::A),
          gen_coherent_tags(rate, kPicosPerSecond, RandomSeed{2}, Channel::B)};
}

void BM_PairCount(benchmark::State& state) {
  const auto [a, b] = streams(static_cast<double>(state.range(0)));
  const CoincidenceWindow w(5000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_pair_coincidences(a, b, w));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size() + b.size()));
}
BENCHMARK(BM_PairCount)->Arg(15000)->Arg(150000)->Arg(1500000);

void BM_TripleCount(benchmark::State& state) {
  const auto [a, b] = streams(static_cast<double>(state.range(0)));
  const auto bp = gen_coherent_tags(static_cast<double>(state.range(0)), kPicosPerSecond,
                                    RandomSeed{3}, Channel::Bprime);
  const CoincidenceWindow w(30000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_triple_coincidences(a, b, bp, w));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(a.size() + b.size() + bp.size()));
}
BENCHMARK(BM_TripleCount)->Arg(15000)->Arg(150000)->Arg(1500000);

void BM_Summarize(benchmark::State& state) {
  const auto [a, b] = streams(15000.0);
  const auto bp = gen_coherent_tags(15000.0, kPicosPerSecond, RandomSeed{3}, Channel::Bprime);
  for (auto _ : state) {
    benchmark::DoNotOptimize(summarize(a, b, bp, CoincidenceWindow(5000)));
  }
}
BENCHMARK(BM_Summarize);

}  // namespace
