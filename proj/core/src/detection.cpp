#include "photocorr/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace photocorr {

void DetectorConfig::validate() const {
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("detector efficiency must lie in [0, 1]");
  }
  if (!(dark_rate >= 0.0) || !std::isfinite(dark_rate)) {
    throw std::invalid_argument("detector dark_rate must be non-negative");
  }
  if (dead_time < 0) {
    throw std::invalid_argument("detector dead_time must be non-negative");
  }
  if (pulse_width <= 0) {
    throw std::invalid_argument("detector pulse_width must be positive");
  }
  if (jitter < 0) {
    throw std::invalid_argument("detector jitter must be non-negative");
  }
}

namespace {

Picoseconds jittered(Picoseconds t, Picoseconds jitter, Rng& rng) {
  if (jitter == 0) {
    return t;
  }
  return t + static_cast<Picoseconds>(
                 std::llround(static_cast<double>(jitter) * rng.standard_normal()));
}

}  // namespace

void check_linear_regime(const IntensityTrace& trace, double efficiency) {
  const double bin_s = to_seconds(trace.bin_width());
  const auto values = trace.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double mean_count = efficiency * values[i] * bin_s;
    if (!(mean_count < kMaxBinCountProbability)) {
      throw std::invalid_argument(
          "trace bin " + std::to_string(i) + " has detection probability " +
          std::to_string(mean_count) + " per bin (limit " +
          std::to_string(kMaxBinCountProbability) + "); use a finer bin width");
    }
  }
}

void thin_and_jitter(std::span<const TimeTag> photons, const DetectorConfig& config, Rng& rng,
                     Picoseconds offset, std::vector<Picoseconds>& out) {
  if (config.efficiency <= 0.0) {
    return;
  }
  const bool keep_all = config.efficiency >= 1.0;
  for (const auto& photon : photons) {
    if (keep_all || rng.uniform() < config.efficiency) {
      out.push_back(offset + jittered(photon.time, config.jitter, rng));
    }
  }
}

void sample_intensity(const IntensityTrace& trace, const DetectorConfig& config, Rng& rng,
                      Picoseconds offset, std::vector<Picoseconds>& out) {
  // Time change on the integrated intensity: unit-mean exponential gaps in
  // expected-count units are walked across the bins. Counts per bin are then
  // Poisson(efficiency * I * bin) and positions are uniform inside the bin.
  const double bin_s = to_seconds(trace.bin_width());
  const auto bin_ps = static_cast<double>(trace.bin_width());
  const double scale = config.efficiency * bin_s;
  if (scale <= 0.0) {
    return;
  }
  const auto values = trace.values();
  double carry = rng.standard_exponential();
  Picoseconds bin_start = offset;
  for (const double value : values) {
    const double lambda = scale * value;
    if (carry < lambda) {
      double position = carry;
      do {
        const auto within = static_cast<Picoseconds>(position / lambda * bin_ps);
        out.push_back(jittered(bin_start + within, config.jitter, rng));
        position += rng.standard_exponential();
      } while (position < lambda);
      carry = position - lambda;
    } else {
      carry -= lambda;
    }
    bin_start += trace.bin_width();
  }
}

TimeTagStream apply_dead_time(const TimeTagStream& tags, Picoseconds dead_time) {
  if (dead_time < 0) {
    throw std::invalid_argument("dead_time must be non-negative");
  }
  if (dead_time == 0) {
    return tags;
  }
  std::vector<TimeTag> kept;
  kept.reserve(tags.size());
  for (const auto& tag : tags) {
    if (kept.empty() || tag.time - kept.back().time >= dead_time) {
      kept.push_back(tag);
    }
  }
  return TimeTagStream(std::move(kept), tags.duration());
}

TimeTagStream finalize_detection(std::vector<Picoseconds> raw, const DetectorConfig& config,
                                 Picoseconds duration, RandomSeed dark_seed, Channel channel) {
  std::erase_if(raw, [duration](Picoseconds t) { return t < 0 || t >= duration; });
  if (config.dark_rate > 0.0 && duration > 0) {
    const auto darks = gen_coherent_tags(config.dark_rate, duration, dark_seed, channel);
    for (const auto& tag : darks) {
      raw.push_back(tag.time);
    }
  }
  std::sort(raw.begin(), raw.end());
  auto stream = TimeTagStream::from_times(std::move(raw), channel, duration);
  return apply_dead_time(stream, config.dead_time);
}

TimeTagStream detect_photons(const TimeTagStream& photons, const DetectorConfig& config,
                             RandomSeed seed, Channel channel) {
  config.validate();
  Rng rng(split_seed(seed, 0));
  std::vector<Picoseconds> raw;
  raw.reserve(static_cast<std::size_t>(static_cast<double>(photons.size()) * config.efficiency) +
              16);
  thin_and_jitter(photons.tags(), config, rng, 0, raw);
  return finalize_detection(std::move(raw), config, photons.duration(), split_seed(seed, 1),
                            channel);
}

TimeTagStream detect_intensity(const IntensityTrace& trace, const DetectorConfig& config,
                               RandomSeed seed, Channel channel) {
  config.validate();
  check_linear_regime(trace, config.efficiency);
  Rng rng(split_seed(seed, 0));
  std::vector<Picoseconds> raw;
  sample_intensity(trace, config, rng, 0, raw);
  return finalize_detection(std::move(raw), config, trace.duration(), split_seed(seed, 1),
                            channel);
}

}  // namespace photocorr
