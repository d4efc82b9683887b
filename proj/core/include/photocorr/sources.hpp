#pragma once

#include <span>
#include <vector>

#include "photocorr/core.hpp"

namespace photocorr {

enum class SourceKind { Coherent, Thermal, SpdcPairs };

struct SourceConfig {
  SourceKind kind = SourceKind::SpdcPairs;
  double mean_rate = 370'000.0;     // events/s (photons, intensity-equivalent counts, or pairs)
  Picoseconds coherence_time = 0;   // Thermal only
  Picoseconds pair_jitter = 0;      // SpdcPairs only, RMS
  Picoseconds duration = kPicosPerSecond;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Piecewise-constant classical intensity. Values are in counts/s at unit
// detector efficiency, so efficiency * value is directly a detection rate.
class IntensityTrace {
 public:
  IntensityTrace() = default;
  IntensityTrace(Picoseconds bin_width, std::vector<double> values);

  [[nodiscard]] Picoseconds bin_width() const { return bin_width_; }
  [[nodiscard]] Picoseconds duration() const {
    return bin_width_ * static_cast<Picoseconds>(values_.size());
  }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

  [[nodiscard]] double mean() const;
  // <I^2> / <I>^2 over the bins; undefined (throws) for an all-zero trace.
  [[nodiscard]] double normalized_second_moment() const;

 private:
  Picoseconds bin_width_ = 1;
  std::vector<double> values_;
};

struct PhotonPair {
  Picoseconds herald = 0;
  // Herald time plus pair jitter; may fall outside [0, duration).
  Picoseconds partner = 0;
};

class PairStream {
 public:
  PairStream() = default;
  PairStream(std::vector<PhotonPair> pairs, Picoseconds duration);

  [[nodiscard]] std::span<const PhotonPair> pairs() const { return pairs_; }
  [[nodiscard]] Picoseconds duration() const { return duration_; }
  [[nodiscard]] std::size_t size() const { return pairs_.size(); }

  [[nodiscard]] TimeTagStream heralds(Channel channel = Channel::A) const;
  // Partners inside [0, duration), sorted.
  [[nodiscard]] TimeTagStream partners(Channel channel = Channel::B) const;

 private:
  std::vector<PhotonPair> pairs_;
  Picoseconds duration_ = 0;
};

struct SplitterConfig {
  double transmit = 0.5;
  double reflect = 0.5;

  [[nodiscard]] double loss() const { return 1.0 - transmit - reflect; }
  void validate() const;
};

struct RoutedTags {
  TimeTagStream transmitted;
  TimeTagStream reflected;
};

struct RoutedTraces {
  IntensityTrace transmitted;
  IntensityTrace reflected;
};

// Homogeneous Poisson photon stream by exponential inter-arrival times.
TimeTagStream gen_coherent_tags(double rate_hz, Picoseconds duration, RandomSeed seed,
                                Channel channel = Channel::A);

// Constant intensity; the stable-laser field in trace form.
IntensityTrace constant_trace(double rate_hz, Picoseconds bin_width, Picoseconds duration);

// Thermal (chaotic) light as a step process: the intensity is redrawn from an
// exponential distribution with the configured mean at every multiple of
// coherence_time and held constant in between. bin_width must resolve the
// fluctuations (at most coherence_time / 10) and divide the duration.
IntensityTrace gen_thermal_trace(double mean_rate, Picoseconds coherence_time,
                                 Picoseconds bin_width, Picoseconds duration, RandomSeed seed);

// Pair creation times are Poisson at pair_rate; partner = herald + N(0, jitter).
PairStream gen_spdc_pairs(double pair_rate, Picoseconds pair_jitter, Picoseconds duration,
                          RandomSeed seed);

// Each photon goes to exactly one of {transmitted, reflected, lost}.
RoutedTags route_quantum(const TimeTagStream& photons, const SplitterConfig& splitter,
                         RandomSeed seed, Channel transmitted_channel = Channel::B,
                         Channel reflected_channel = Channel::Bprime);

// Pointwise scaling by Tr and Re.
RoutedTraces route_classical(const IntensityTrace& trace, const SplitterConfig& splitter);

}  // namespace photocorr
