#include "photocorr/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace photocorr {

Picoseconds seconds_to_ps(double seconds) {
  const double ps = std::round(seconds * static_cast<double>(kPicosPerSecond));
  // 2^63 is exactly representable; anything at or beyond it overflows.
  if (!std::isfinite(ps) || ps >= 9.2233720368547758e18 || ps < -9.2233720368547758e18) {
    throw std::invalid_argument("time value out of picosecond range: " + std::to_string(seconds) +
                                " s");
  }
  return static_cast<Picoseconds>(ps);
}

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::A:
      return "A";
    case Channel::B:
      return "B";
    case Channel::Bprime:
      return "Bprime";
  }
  return "?";
}

TimeTagStream::TimeTagStream(std::vector<TimeTag> tags, Picoseconds duration, SortPolicy policy)
    : tags_(std::move(tags)), duration_(duration) {
  if (duration_ < 0) {
    throw std::invalid_argument("stream duration must be non-negative");
  }
  if (!std::is_sorted(tags_.begin(), tags_.end())) {
    if (policy == SortPolicy::Reject) {
      const auto it = std::is_sorted_until(tags_.begin(), tags_.end());
      throw std::invalid_argument("time tags not sorted at index " +
                                  std::to_string(it - tags_.begin()));
    }
    std::sort(tags_.begin(), tags_.end());
  }
  if (!tags_.empty()) {
    if (tags_.front().time < 0) {
      throw std::invalid_argument("time tag before experiment start: " +
                                  std::to_string(tags_.front().time) + " ps");
    }
    if (tags_.back().time >= duration_) {
      throw std::invalid_argument("time tag " + std::to_string(tags_.back().time) +
                                  " ps not below stream duration " + std::to_string(duration_));
    }
  }
}

TimeTagStream TimeTagStream::from_times(std::vector<Picoseconds> times, Channel channel,
                                        Picoseconds duration, SortPolicy policy) {
  if (policy == SortPolicy::Sort) {
    std::sort(times.begin(), times.end());
  }
  std::vector<TimeTag> tags;
  tags.reserve(times.size());
  for (const Picoseconds t : times) {
    tags.push_back({t, channel});
  }
  return TimeTagStream(std::move(tags), duration, SortPolicy::Reject);
}

std::vector<Picoseconds> TimeTagStream::times() const {
  std::vector<Picoseconds> out;
  out.reserve(tags_.size());
  for (const auto& tag : tags_) {
    out.push_back(tag.time);
  }
  return out;
}

TimeTagStream TimeTagStream::relabeled(Channel channel) const {
  return from_times(times(), channel, duration_);
}

const TimeTagStream& ChannelStreams::operator[](Channel c) const {
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

TimeTagStream& ChannelStreams::operator[](Channel c) {
  return const_cast<TimeTagStream&>(std::as_const(*this)[c]);
}

CoincidenceWindow::CoincidenceWindow(Picoseconds pulse_width) : pulse_width_(pulse_width) {
  if (pulse_width_ <= 0) {
    throw std::invalid_argument("pulse width must be positive, got " +
                                std::to_string(pulse_width_) + " ps");
  }
}

CoincidenceWindow CoincidenceWindow::from_window(Picoseconds window) {
  if (window <= 0 || window % 2 != 0) {
    throw std::invalid_argument("coincidence window must be a positive even number of ps, got " +
                                std::to_string(window));
  }
  return CoincidenceWindow(window / 2);
}

double propagation_delay(double path_length_m) {
  if (!(path_length_m >= 0.0)) {
    throw std::invalid_argument("path length must be non-negative");
  }
  return path_length_m / kSpeedOfLight;
}

namespace {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomSeed split_seed(RandomSeed seed, std::uint64_t run_index) {
  // Mixing the parent first decorrelates nearby parents; the Weyl step over
  // the index keeps children of one parent distinct.
  const std::uint64_t base = mix64(seed.value ^ 0x5851f42d4c957f2dULL);
  return RandomSeed{mix64(base + (run_index + 1) * 0x9e3779b97f4a7c15ULL)};
}

}  // namespace photocorr
