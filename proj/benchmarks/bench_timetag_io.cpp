#include <benchmark/benchmark.h>

#include <sstream>

#include "photocorr/sources.hpp"
#include "photocorr/timetag_io.hpp"

namespace {

using namespace photocorr;

ChannelStreams sample() {
  const Picoseconds T = kPicosPerSecond / 10;
  return {gen_coherent_tags(1e6, T, RandomSeed{1}, Channel::A),
          gen_coherent_tags(5e5, T, RandomSeed{2}, Channel::B),
          gen_coherent_tags(5e5, T, RandomSeed{3}, Channel::Bprime)};
}

void BM_WriteTags(benchmark::State& state) {
  const auto s = sample();
  for (auto _ : state) {
    std::ostringstream out(std::ios::binary);
    benchmark::DoNotOptimize(write_tags(s, out));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(kTagHeaderSize + kTagRecordSize * s.total_tags()));
}
BENCHMARK(BM_WriteTags);

void BM_ReadTags(benchmark::State& state) {
  std::ostringstream out(std::ios::binary);
  write_tags(sample(), out);
  const std::string bytes = out.str();
  for (auto _ : state) {
    std::istringstream in(bytes, std::ios::binary);
    benchmark::DoNotOptimize(read_tags(in));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_ReadTags);

}  // namespace
