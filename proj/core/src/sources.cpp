#include "photocorr/sources.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "photocorr/random.hpp"

namespace photocorr {

namespace {

void require_positive_rate(double rate, const char* what) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

void require_positive_duration(Picoseconds duration) {
  if (duration <= 0) {
    throw std::invalid_argument("duration must be positive, got " + std::to_string(duration) +
                                " ps");
  }
}

// Poisson arrival times on [0, duration) at rate_hz.
std::vector<Picoseconds> poisson_times(double rate_hz, Picoseconds duration, Rng& rng) {
  const double rate_per_ps = rate_hz / static_cast<double>(kPicosPerSecond);
  const double end = static_cast<double>(duration);
  std::vector<Picoseconds> times;
  times.reserve(static_cast<std::size_t>(rate_per_ps * end * 1.01 + 16.0));
  double t = 0.0;
  for (;;) {
    t += rng.standard_exponential() / rate_per_ps;
    if (t >= end) {
      break;
    }
    times.push_back(static_cast<Picoseconds>(t));
  }
  return times;
}

}  // namespace

void SourceConfig::validate() const {
  require_positive_rate(mean_rate, "source mean_rate");
  require_positive_duration(duration);
  if (kind == SourceKind::Thermal && coherence_time <= 0) {
    throw std::invalid_argument("thermal source needs coherence_time > 0");
  }
  if (kind == SourceKind::SpdcPairs && pair_jitter < 0) {
    throw std::invalid_argument("pair_jitter must be non-negative");
  }
}

IntensityTrace::IntensityTrace(Picoseconds bin_width, std::vector<double> values)
    : bin_width_(bin_width), values_(std::move(values)) {
  if (bin_width_ <= 0) {
    throw std::invalid_argument("trace bin width must be positive");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("trace value at bin " + std::to_string(i) +
                                  " is negative or not finite");
    }
  }
}

double IntensityTrace::mean() const {
  if (values_.empty()) {
    return 0.0;
  }
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double IntensityTrace::normalized_second_moment() const {
  const double m = mean();
  if (!(m > 0.0)) {
    throw std::domain_error("second moment ratio undefined for a dark trace");
  }
  double sq = 0.0;
  for (const double v : values_) {
    sq += v * v;
  }
  sq /= static_cast<double>(values_.size());
  return sq / (m * m);
}

PairStream::PairStream(std::vector<PhotonPair> pairs, Picoseconds duration)
    : pairs_(std::move(pairs)), duration_(duration) {
  const bool sorted = std::is_sorted(pairs_.begin(), pairs_.end(),
                                     [](const PhotonPair& l, const PhotonPair& r) {
                                       return l.herald < r.herald;
                                     });
  if (!sorted) {
    throw std::invalid_argument("pair heralds must be sorted");
  }
  if (!pairs_.empty() && (pairs_.front().herald < 0 || pairs_.back().herald >= duration_)) {
    throw std::invalid_argument("pair herald outside [0, duration)");
  }
}

TimeTagStream PairStream::heralds(Channel channel) const {
  std::vector<Picoseconds> times;
  times.reserve(pairs_.size());
  for (const auto& p : pairs_) {
    times.push_back(p.herald);
  }
  return TimeTagStream::from_times(std::move(times), channel, duration_);
}

TimeTagStream PairStream::partners(Channel channel) const {
  std::vector<Picoseconds> times;
  times.reserve(pairs_.size());
  for (const auto& p : pairs_) {
    if (p.partner >= 0 && p.partner < duration_) {
      times.push_back(p.partner);
    }
  }
  return TimeTagStream::from_times(std::move(times), channel, duration_, SortPolicy::Sort);
}

void SplitterConfig::validate() const {
  if (!(transmit >= 0.0 && transmit <= 1.0) || !(reflect >= 0.0 && reflect <= 1.0)) {
    throw std::invalid_argument("splitter transmit and reflect must lie in [0, 1]");
  }
  // Small slack so that e.g. 0.3 + 0.7 is accepted as lossless.
  if (transmit + reflect > 1.0 + 1e-12) {
    throw std::invalid_argument("splitter transmit + reflect exceeds 1");
  }
}

TimeTagStream gen_coherent_tags(double rate_hz, Picoseconds duration, RandomSeed seed,
                                Channel channel) {
  require_positive_rate(rate_hz, "coherent rate");
  require_positive_duration(duration);
  Rng rng(seed);
  return TimeTagStream::from_times(poisson_times(rate_hz, duration, rng), channel, duration);
}

IntensityTrace constant_trace(double rate_hz, Picoseconds bin_width, Picoseconds duration) {
  if (!(rate_hz >= 0.0)) {
    throw std::invalid_argument("constant trace rate must be non-negative");
  }
  require_positive_duration(duration);
  if (bin_width <= 0 || duration % bin_width != 0) {
    throw std::invalid_argument("trace bin width must be positive and divide the duration");
  }
  return IntensityTrace(bin_width,
                        std::vector<double>(static_cast<std::size_t>(duration / bin_width), rate_hz));
}

IntensityTrace gen_thermal_trace(double mean_rate, Picoseconds coherence_time,
                                 Picoseconds bin_width, Picoseconds duration, RandomSeed seed) {
  require_positive_rate(mean_rate, "thermal mean_rate");
  require_positive_duration(duration);
  if (coherence_time <= 0) {
    throw std::invalid_argument("coherence_time must be positive");
  }
  if (bin_width <= 0 || bin_width * 10 > coherence_time) {
    throw std::invalid_argument("bin_width " + std::to_string(bin_width) +
                                " ps too coarse: a thermal trace needs at least 10 bins per "
                                "coherence time (bin_width <= coherence_time / 10)");
  }
  if (duration % bin_width != 0) {
    throw std::invalid_argument("trace bin width must divide the duration");
  }

  Rng rng(seed);
  const auto n_bins = static_cast<std::size_t>(duration / bin_width);
  std::vector<double> values(n_bins);
  Picoseconds current_segment = -1;
  double level = 0.0;
  for (std::size_t i = 0; i < n_bins; ++i) {
    const Picoseconds segment = static_cast<Picoseconds>(i) * bin_width / coherence_time;
    if (segment != current_segment) {
      current_segment = segment;
      level = mean_rate * rng.standard_exponential();
    }
    values[i] = level;
  }
  return IntensityTrace(bin_width, std::move(values));
}

PairStream gen_spdc_pairs(double pair_rate, Picoseconds pair_jitter, Picoseconds duration,
                          RandomSeed seed) {
  require_positive_rate(pair_rate, "pair rate");
  require_positive_duration(duration);
  if (pair_jitter < 0) {
    throw std::invalid_argument("pair_jitter must be non-negative");
  }
  Rng rng(seed);
  const auto heralds = poisson_times(pair_rate, duration, rng);
  std::vector<PhotonPair> pairs;
  pairs.reserve(heralds.size());
  const double sigma = static_cast<double>(pair_jitter);
  for (const Picoseconds h : heralds) {
    Picoseconds partner = h;
    if (pair_jitter > 0) {
      partner += static_cast<Picoseconds>(std::llround(sigma * rng.standard_normal()));
    }
    pairs.push_back({h, partner});
  }
  return PairStream(std::move(pairs), duration);
}

RoutedTags route_quantum(const TimeTagStream& photons, const SplitterConfig& splitter,
                         RandomSeed seed, Channel transmitted_channel, Channel reflected_channel) {
  splitter.validate();
  Rng rng(seed);
  std::vector<Picoseconds> transmitted;
  std::vector<Picoseconds> reflected;
  transmitted.reserve(static_cast<std::size_t>(static_cast<double>(photons.size()) * splitter.transmit * 1.01) + 16);
  reflected.reserve(static_cast<std::size_t>(static_cast<double>(photons.size()) * splitter.reflect * 1.01) + 16);
  const double to_reflected = splitter.transmit + splitter.reflect;
  for (const auto& tag : photons) {
    const double u = rng.uniform();
    if (u < splitter.transmit) {
      transmitted.push_back(tag.time);
    } else if (u < to_reflected) {
      reflected.push_back(tag.time);
    }
  }
  return {TimeTagStream::from_times(std::move(transmitted), transmitted_channel, photons.duration()),
          TimeTagStream::from_times(std::move(reflected), reflected_channel, photons.duration())};
}

RoutedTraces route_classical(const IntensityTrace& trace, const SplitterConfig& splitter) {
  splitter.validate();
  std::vector<double> transmitted(trace.size());
  std::vector<double> reflected(trace.size());
  const auto values = trace.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    transmitted[i] = splitter.transmit * values[i];
    reflected[i] = splitter.reflect * values[i];
  }
  return {IntensityTrace(trace.bin_width(), std::move(transmitted)),
          IntensityTrace(trace.bin_width(), std::move(reflected))};
}

}  // namespace photocorr
