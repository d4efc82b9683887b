#pragma once

#include <cstdint>
#include <span>

#include "photocorr/core.hpp"

namespace photocorr {

// Singles, pairwise and three-fold counts over a common integration time.
struct CountSummary {
  std::uint64_t n_a = 0;
  std::uint64_t n_b = 0;
  std::uint64_t n_bprime = 0;
  std::uint64_t n_ab = 0;
  std::uint64_t n_abprime = 0;
  std::uint64_t n_bbprime = 0;
  std::uint64_t n_abbprime = 0;
  Picoseconds duration = 0;  // T
  Picoseconds window = 0;    // Dt = 2 tau_p

  [[nodiscard]] double seconds() const { return to_seconds(duration); }
  [[nodiscard]] double window_seconds() const { return to_seconds(window); }
  // count / T in Hz; zero for an empty integration time.
  [[nodiscard]] double rate(std::uint64_t count) const;

  // Throws std::logic_error when a counting bound is violated.
  void check_invariants() const;

  // Pools another summary over a disjoint time span. Windows must match.
  CountSummary& operator+=(const CountSummary& other);

  friend bool operator==(const CountSummary&, const CountSummary&) = default;
};

// Rates used by the three-fold accidental estimates, all in Hz.
struct ThreeFoldRates {
  double r_a = 0.0;
  double r_b = 0.0;
  double r_bprime = 0.0;
  double r_ab = 0.0;
  double r_abprime = 0.0;
};

ThreeFoldRates three_fold_rates(const CountSummary& summary);

enum class ThreeFoldMethod {
  Paper,       // Dt * R_A * R_B
  Composite,   // Dt * (R_AB R_B' + R_AB' R_B) + pure triple term
  PureTriple,  // 3 tau_p^2 R_A R_B R_B'
};

struct AccidentalEstimate {
  double rate_2d = 0.0;
  double rate_3d_paper = 0.0;
  double rate_3d_composite = 0.0;
  double rate_3d_pure_triple = 0.0;

  [[nodiscard]] double rate_3d(ThreeFoldMethod method) const;
};

// Pulse-overlap pair counting. A tag pair coincides when
// |t_x - (t_y + offset)| < tau_p, and every tag joins at most one pair.
// Matching is greedy earliest-first over both streams, which yields a
// maximum one-to-one matching; single O(n_x + n_y) pass.
std::uint64_t count_pair_coincidences(const TimeTagStream& x, const TimeTagStream& y,
                                      CoincidenceWindow window, Delay offset = {});

// Raw-time overload; throws std::invalid_argument when a span is unsorted.
std::uint64_t count_pair_coincidences(std::span<const Picoseconds> x,
                                      std::span<const Picoseconds> y, CoincidenceWindow window,
                                      Delay offset = {});

// Herald-centred three-fold counting: an A tag counts when a B tag and a B'
// tag both overlap its pulse (|t_B - t_A - offset_b| < tau_p, likewise B').
// A tags are visited in time order and take the earliest unconsumed partner
// in each arm; partners are consumed only when both are present.
std::uint64_t count_triple_coincidences(const TimeTagStream& a, const TimeTagStream& b,
                                        const TimeTagStream& bprime, CoincidenceWindow window,
                                        ChannelOffsets offsets = {});

std::uint64_t count_triple_coincidences(std::span<const Picoseconds> a,
                                        std::span<const Picoseconds> b,
                                        std::span<const Picoseconds> bprime,
                                        CoincidenceWindow window, ChannelOffsets offsets = {});

// Throws std::invalid_argument when durations differ.
CountSummary summarize(const TimeTagStream& a, const TimeTagStream& b, const TimeTagStream& bprime,
                       CoincidenceWindow window, ChannelOffsets offsets = {});
CountSummary summarize(const ChannelStreams& streams, CoincidenceWindow window,
                       ChannelOffsets offsets = {});

// Delayed-window accidental count: pair coincidences with y shifted by
// `shift`, which must be at least 100 coincidence windows in magnitude.
std::uint64_t shifted_accidentals(const TimeTagStream& x, const TimeTagStream& y,
                                  CoincidenceWindow window, Delay shift);

inline constexpr Picoseconds kMinAccidentalShiftWindows = 100;

// Dt * R_A * R_B.
double accidental_rate_2d(double r_a, double r_b, double window_s);

double accidental_rate_3d(const ThreeFoldRates& rates, double window_s, double pulse_width_s,
                          ThreeFoldMethod method);

// All estimates from a summary; rate_2d uses the A-B pair.
AccidentalEstimate estimate_accidentals(const CountSummary& summary);

}  // namespace photocorr
