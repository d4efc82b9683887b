#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace photocorr {

// All event times are integer picoseconds. Floating point appears only in
// rates, probabilities and alpha values.
using Picoseconds = std::int64_t;

inline constexpr Picoseconds kPicosPerNano = 1'000;
inline constexpr Picoseconds kPicosPerMicro = 1'000'000;
inline constexpr Picoseconds kPicosPerMilli = 1'000'000'000;
inline constexpr Picoseconds kPicosPerSecond = 1'000'000'000'000;

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

constexpr double to_seconds(Picoseconds t) {
  return static_cast<double>(t) / static_cast<double>(kPicosPerSecond);
}

// Rounds to the nearest picosecond. Throws std::invalid_argument when the
// value is not finite or does not fit in 64 bits.
Picoseconds seconds_to_ps(double seconds);

enum class Channel : std::uint8_t { A = 0, B = 1, Bprime = 2 };

inline constexpr std::array<Channel, 3> kAllChannels{Channel::A, Channel::B, Channel::Bprime};

constexpr std::size_t index_of(Channel c) { return static_cast<std::size_t>(c); }
std::string_view to_string(Channel c);

struct TimeTag {
  Picoseconds time = 0;
  Channel channel = Channel::A;

  // Total order used everywhere: time first, ties broken A < B < Bprime.
  friend constexpr auto operator<=>(const TimeTag&, const TimeTag&) = default;
};

enum class SortPolicy { Reject, Sort };

// Sorted, channel-labelled detection record over [0, duration).
//
// Construction validates every invariant: times are non-negative and below
// the duration, and tags are ordered by (time, channel). Unsorted input is
// rejected unless SortPolicy::Sort is requested. Instances are immutable.
class TimeTagStream {
 public:
  TimeTagStream() = default;
  TimeTagStream(std::vector<TimeTag> tags, Picoseconds duration,
                SortPolicy policy = SortPolicy::Reject);

  // Single-channel convenience constructor.
  static TimeTagStream from_times(std::vector<Picoseconds> times, Channel channel,
                                  Picoseconds duration,
                                  SortPolicy policy = SortPolicy::Reject);

  [[nodiscard]] std::span<const TimeTag> tags() const { return tags_; }
  [[nodiscard]] Picoseconds duration() const { return duration_; }
  [[nodiscard]] std::size_t size() const { return tags_.size(); }
  [[nodiscard]] bool empty() const { return tags_.empty(); }
  [[nodiscard]] const TimeTag& operator[](std::size_t i) const { return tags_[i]; }
  [[nodiscard]] auto begin() const { return tags_.cbegin(); }
  [[nodiscard]] auto end() const { return tags_.cend(); }

  [[nodiscard]] std::vector<Picoseconds> times() const;
  [[nodiscard]] TimeTagStream relabeled(Channel channel) const;

  friend bool operator==(const TimeTagStream&, const TimeTagStream&) = default;

 private:
  std::vector<TimeTag> tags_;
  Picoseconds duration_ = 0;
};

// One stream per detector channel, all sharing a duration.
struct ChannelStreams {
  TimeTagStream a;
  TimeTagStream b;
  TimeTagStream bprime;

  [[nodiscard]] const TimeTagStream& operator[](Channel c) const;
  TimeTagStream& operator[](Channel c);
  [[nodiscard]] Picoseconds duration() const { return a.duration(); }
  [[nodiscard]] std::size_t total_tags() const { return a.size() + b.size() + bprime.size(); }

  friend bool operator==(const ChannelStreams&, const ChannelStreams&) = default;
};

// Pulse-overlap coincidence window. Two pulses of width tau_p overlap when
// their start times differ by less than tau_p, so the effective window is
// exactly 2 * tau_p.
class CoincidenceWindow {
 public:
  explicit CoincidenceWindow(Picoseconds pulse_width);

  // Accepts the full window width Dt; it must be a positive even number of ps.
  static CoincidenceWindow from_window(Picoseconds window);

  [[nodiscard]] Picoseconds pulse_width() const { return pulse_width_; }
  [[nodiscard]] Picoseconds window() const { return 2 * pulse_width_; }
  [[nodiscard]] double window_seconds() const { return to_seconds(window()); }

  friend bool operator==(const CoincidenceWindow&, const CoincidenceWindow&) = default;

 private:
  Picoseconds pulse_width_;
};

struct RandomSeed {
  std::uint64_t value = 0;
  friend bool operator==(const RandomSeed&, const RandomSeed&) = default;
};

// Relative shift between channels.
struct Delay {
  Picoseconds tau = 0;
  friend bool operator==(const Delay&, const Delay&) = default;
};

// Delays of B and B' relative to A: a B tag at t_A + offset_b is simultaneous
// with the A tag.
struct ChannelOffsets {
  Delay b;
  Delay bprime;
  friend bool operator==(const ChannelOffsets&, const ChannelOffsets&) = default;
};

// Light travel time over path_length metres, in seconds.
double propagation_delay(double path_length_m);

// Deterministic child seed. For a fixed parent the map index -> child is a
// bijection, so distinct indices never collide.
RandomSeed split_seed(RandomSeed seed, std::uint64_t run_index);

}  // namespace photocorr
