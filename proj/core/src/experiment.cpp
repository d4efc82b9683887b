#include "photocorr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "photocorr/random.hpp"

namespace photocorr {

namespace {

// Target number of source events (or trace bins) held in memory at once.
constexpr double kChunkEvents = 1 << 20;

struct Chunk {
  Picoseconds start;
  Picoseconds length;
};

// Largest 1/2/5 x 10^k picosecond value not above limit (at least 1 ps).
Picoseconds round_down_125(double limit) {
  Picoseconds best = 1;
  for (Picoseconds decade = 1; decade <= kPicosPerSecond * 1000; decade *= 10) {
    for (const Picoseconds m : {1, 2, 5}) {
      if (static_cast<double>(decade * m) <= limit) {
        best = decade * m;
      }
    }
  }
  return best;
}

std::vector<Chunk> plan_chunks(Picoseconds duration, Picoseconds target, Picoseconds quantum) {
  Picoseconds length = std::max<Picoseconds>(target, quantum);
  length = (length / quantum) * quantum;
  std::vector<Chunk> chunks;
  for (Picoseconds start = 0; start < duration; start += length) {
    chunks.push_back({start, std::min(length, duration - start)});
  }
  return chunks;
}

double max_trace_efficiency(const ExperimentConfig& c) {
  return std::max(c.detectors.a.efficiency * c.splitter.transmit,
                  c.detectors.b.efficiency * c.splitter.reflect);
}

void simulate_spdc(const ExperimentConfig& c, RandomSeed chunk_root,
                   std::array<std::vector<Picoseconds>, 3>& raw) {
  const Picoseconds target = seconds_to_ps(kChunkEvents / c.source.mean_rate);
  const auto chunks = plan_chunks(c.run_duration, std::max(target, kPicosPerMilli), 1);
  const bool three = c.mode == DetectorMode::ThreeDetector;
  for (std::size_t k = 0; k < chunks.size(); ++k) {
    const RandomSeed cs = split_seed(chunk_root, k);
    const auto pairs =
        gen_spdc_pairs(c.source.mean_rate, c.source.pair_jitter, chunks[k].length, split_seed(cs, 0));
    const auto heralds = pairs.heralds(Channel::A);
    // Partners carried past the chunk edge by pair jitter are dropped here.
    const auto partners = pairs.partners(Channel::B);

    Rng rng_a(split_seed(cs, 1));
    thin_and_jitter(heralds.tags(), c.detectors.a, rng_a, chunks[k].start, raw[0]);
    if (three) {
      const auto routed = route_quantum(partners, c.splitter, split_seed(cs, 2));
      Rng rng_b(split_seed(cs, 3));
      thin_and_jitter(routed.transmitted.tags(), c.detectors.b, rng_b, chunks[k].start, raw[1]);
      Rng rng_bp(split_seed(cs, 4));
      thin_and_jitter(routed.reflected.tags(), c.detectors.bprime, rng_bp, chunks[k].start,
                      raw[2]);
    } else {
      Rng rng_b(split_seed(cs, 3));
      thin_and_jitter(partners.tags(), c.detectors.b, rng_b, chunks[k].start, raw[1]);
    }
  }
}

void simulate_coherent_photons(const ExperimentConfig& c, RandomSeed chunk_root,
                               std::array<std::vector<Picoseconds>, 3>& raw) {
  const Picoseconds target = seconds_to_ps(kChunkEvents / c.source.mean_rate);
  const auto chunks = plan_chunks(c.run_duration, std::max(target, kPicosPerMilli), 1);
  for (std::size_t k = 0; k < chunks.size(); ++k) {
    const RandomSeed cs = split_seed(chunk_root, k);
    const auto photons = gen_coherent_tags(c.source.mean_rate, chunks[k].length, split_seed(cs, 0));
    const auto routed = route_quantum(photons, c.splitter, split_seed(cs, 2), Channel::A, Channel::B);
    Rng rng_a(split_seed(cs, 1));
    thin_and_jitter(routed.transmitted.tags(), c.detectors.a, rng_a, chunks[k].start, raw[0]);
    Rng rng_b(split_seed(cs, 3));
    thin_and_jitter(routed.reflected.tags(), c.detectors.b, rng_b, chunks[k].start, raw[1]);
  }
}

void simulate_semiclassical(const ExperimentConfig& c, RandomSeed chunk_root,
                            std::array<std::vector<Picoseconds>, 3>& raw) {
  const Picoseconds bin = c.effective_bin_width();
  const bool thermal = c.source.kind == SourceKind::Thermal;
  // Thermal chunks start on coherence-segment boundaries so the redraw grid
  // is the same as for a single trace over the whole run.
  const Picoseconds quantum = thermal ? std::lcm(bin, c.source.coherence_time) : bin;
  const auto target = static_cast<Picoseconds>(kChunkEvents) * bin;
  const auto chunks = plan_chunks(c.run_duration, target, quantum);
  for (std::size_t k = 0; k < chunks.size(); ++k) {
    const RandomSeed cs = split_seed(chunk_root, k);
    const auto trace = thermal ? gen_thermal_trace(c.source.mean_rate, c.source.coherence_time, bin,
                                                   chunks[k].length, split_seed(cs, 0))
                               : constant_trace(c.source.mean_rate, bin, chunks[k].length);
    const auto routed = route_classical(trace, c.splitter);
    check_linear_regime(routed.transmitted, c.detectors.a.efficiency);
    check_linear_regime(routed.reflected, c.detectors.b.efficiency);
    Rng rng_a(split_seed(cs, 1));
    sample_intensity(routed.transmitted, c.detectors.a, rng_a, chunks[k].start, raw[0]);
    Rng rng_b(split_seed(cs, 3));
    sample_intensity(routed.reflected, c.detectors.b, rng_b, chunks[k].start, raw[1]);
  }
}

template <class F>
void with_key(const char* key, F&& check) {
  try {
    check();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

}  // namespace

const DetectorConfig& DetectorSet::operator[](Channel c) const {
  switch (c) {
    case Channel::A:
      return a;
    case Channel::B:
      return b;
    case Channel::Bprime:
      return bprime;
  }
  throw std::invalid_argument("unknown channel");
}

DetectorConfig& DetectorSet::operator[](Channel c) {
  return const_cast<DetectorConfig&>(std::as_const(*this)[c]);
}

ExperimentConfig::ExperimentConfig() {
  source.kind = SourceKind::SpdcPairs;
  source.mean_rate = 370'000.0;
  source.pair_jitter = 0;
  for (const Channel ch : kAllChannels) {
    detectors[ch].efficiency = 0.04;
  }
}

Picoseconds ExperimentConfig::effective_bin_width() const {
  if (trace_bin_width > 0) {
    return trace_bin_width;
  }
  const double eff = std::max(max_trace_efficiency(*this), 1e-12);
  const double per_ps = eff * source.mean_rate / static_cast<double>(kPicosPerSecond);
  if (source.kind == SourceKind::Thermal) {
    // Exponential intensities: leave a factor 20 headroom above the mean.
    const double limit = std::min(static_cast<double>(source.coherence_time) / 10.0,
                                  kMaxBinCountProbability / 20.0 / per_ps);
    return round_down_125(limit);
  }
  return round_down_125(kMaxBinCountProbability / 2.0 / per_ps);
}

void ExperimentConfig::validate() const {
  if (n_runs < 1) {
    throw ConfigError("run.count", "need at least one run");
  }
  if (run_duration <= 0) {
    throw ConfigError("run.duration_s", "run duration must be positive");
  }
  if (!(source.mean_rate > 0.0) || !std::isfinite(source.mean_rate)) {
    throw ConfigError("source.rate_hz", "rate must be positive");
  }
  if (source.kind == SourceKind::Thermal && source.coherence_time <= 0) {
    throw ConfigError("source.coherence_time_ps", "thermal light needs a positive coherence time");
  }
  if (source.pair_jitter < 0) {
    throw ConfigError("source.pair_jitter_ps", "must be non-negative");
  }
  if (!(splitter.transmit >= 0.0 && splitter.transmit <= 1.0)) {
    throw ConfigError("splitter.transmit", "must lie in [0, 1]");
  }
  with_key("splitter.reflect", [&] { splitter.validate(); });
  for (const Channel ch : kAllChannels) {
    const auto& d = detectors[ch];
    const std::string p = ch == Channel::A   ? "detectors.a."
                          : ch == Channel::B ? "detectors.b."
                                             : "detectors.bprime.";
    if (!(d.efficiency >= 0.0 && d.efficiency <= 1.0)) {
      throw ConfigError(p + "efficiency", "must lie in [0, 1]");
    }
    if (!(d.dark_rate >= 0.0) || !std::isfinite(d.dark_rate)) {
      throw ConfigError(p + "dark_rate_hz", "must be non-negative");
    }
    if (d.dead_time < 0) {
      throw ConfigError(p + "dead_time_ps", "must be non-negative");
    }
    if (d.pulse_width <= 0) {
      throw ConfigError(p + "pulse_width_ps", "must be positive");
    }
    if (d.jitter < 0) {
      throw ConfigError(p + "jitter_ps", "must be non-negative");
    }
  }

  if (mode == DetectorMode::ThreeDetector &&
      (source.kind != SourceKind::SpdcPairs || model != FieldModel::Quantum)) {
    throw ConfigError("mode", "three-detector mode needs an spdc source with the quantum model");
  }
  if (model == FieldModel::SemiClassical) {
    if (source.kind == SourceKind::SpdcPairs) {
      throw ConfigError("model", "spdc pairs have no semi-classical representation");
    }
    const Picoseconds bin = effective_bin_width();
    if (run_duration % bin != 0) {
      throw ConfigError("trace.bin_width_ps", "bin width " + std::to_string(bin) +
                                                  " ps must divide the run duration");
    }
    if (source.kind == SourceKind::Thermal && bin * 10 > source.coherence_time) {
      throw ConfigError("trace.bin_width_ps",
                        "bin width must be at most coherence_time / 10 for thermal light");
    }
  } else if (source.kind == SourceKind::Thermal) {
    throw ConfigError("model", "thermal light is only simulated with the semiclassical model");
  }
}

ChannelStreams simulate_run(const ExperimentConfig& config, std::uint32_t run_index) {
  config.validate();
  const RandomSeed run_seed = split_seed(config.seed, run_index);
  const RandomSeed chunk_root = split_seed(run_seed, 3);

  std::array<std::vector<Picoseconds>, 3> raw;
  if (config.model == FieldModel::SemiClassical) {
    simulate_semiclassical(config, chunk_root, raw);
  } else if (config.source.kind == SourceKind::SpdcPairs) {
    simulate_spdc(config, chunk_root, raw);
  } else {
    simulate_coherent_photons(config, chunk_root, raw);
  }

  ChannelStreams out;
  const bool three = config.mode == DetectorMode::ThreeDetector;
  for (const Channel ch : kAllChannels) {
    if (ch == Channel::Bprime && !three) {
      out[ch] = TimeTagStream({}, config.run_duration);
      continue;
    }
    // Dark counts use channel-indexed children of the run seed.
    out[ch] = finalize_detection(std::move(raw[index_of(ch)]), config.detectors[ch],
                                 config.run_duration, split_seed(run_seed, index_of(ch)), ch);
  }
  return out;
}

}  // namespace photocorr
