#include "photocorr/coincidence.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace photocorr {

namespace {

// Uniform indexed access to event times for both tag spans and raw times.
struct TagTimes {
  std::span<const TimeTag> tags;
  [[nodiscard]] std::size_t size() const { return tags.size(); }
  Picoseconds operator[](std::size_t i) const { return tags[i].time; }
};

struct RawTimes {
  std::span<const Picoseconds> times;
  [[nodiscard]] std::size_t size() const { return times.size(); }
  Picoseconds operator[](std::size_t i) const { return times[i]; }
};

void require_sorted(std::span<const Picoseconds> times, const char* name) {
  const auto it = std::is_sorted_until(times.begin(), times.end());
  if (it != times.end()) {
    throw std::invalid_argument(std::string("stream ") + name + " not sorted at index " +
                                std::to_string(it - times.begin()));
  }
}

template <class X, class Y>
std::uint64_t pair_scan(const X& x, const Y& y, Picoseconds pulse_width, Picoseconds offset) {
  std::uint64_t count = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    const Picoseconds tx = x[i];
    const Picoseconds ty = y[j] + offset;
    const Picoseconds d = tx - ty;
    if (d > -pulse_width && d < pulse_width) {
      ++count;
      ++i;
      ++j;
    } else if (tx < ty) {
      ++i;  // x[i] precedes every remaining y window
    } else {
      ++j;
    }
  }
  return count;
}

// Tracks the earliest unconsumed partner inside a window that only slides
// forward. Every index in [low, next) is either consumed or out of range.
template <class S>
class PartnerCursor {
 public:
  PartnerCursor(const S& times, Picoseconds offset, Picoseconds pulse_width)
      : times_(times), offset_(offset), pulse_width_(pulse_width) {}

  // Index of the earliest unconsumed partner overlapping a herald at t, or size().
  std::size_t find(Picoseconds t) {
    const Picoseconds center = t + offset_;
    while (low_ < times_.size() && times_[low_] <= center - pulse_width_) {
      ++low_;
    }
    const std::size_t k = std::max(low_, next_);
    if (k < times_.size() && times_[k] < center + pulse_width_) {
      return k;
    }
    return times_.size();
  }

  void consume(std::size_t k) { next_ = k + 1; }

 private:
  const S& times_;
  Picoseconds offset_;
  Picoseconds pulse_width_;
  std::size_t low_ = 0;
  std::size_t next_ = 0;
};

template <class A, class B, class C>
std::uint64_t triple_scan(const A& a, const B& b, const C& bprime, Picoseconds pulse_width,
                          ChannelOffsets offsets) {
  PartnerCursor<B> b_cursor(b, offsets.b.tau, pulse_width);
  PartnerCursor<C> bp_cursor(bprime, offsets.bprime.tau, pulse_width);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t kb = b_cursor.find(a[i]);
    const std::size_t kbp = bp_cursor.find(a[i]);
    if (kb < b.size() && kbp < bprime.size()) {
      ++count;
      b_cursor.consume(kb);
      bp_cursor.consume(kbp);
    }
  }
  return count;
}

}  // namespace

double CountSummary::rate(std::uint64_t count) const {
  if (duration <= 0) {
    return 0.0;
  }
  return static_cast<double>(count) / seconds();
}

void CountSummary::check_invariants() const {
  if (n_ab > std::min(n_a, n_b) || n_abprime > std::min(n_a, n_bprime) ||
      n_bbprime > std::min(n_b, n_bprime)) {
    throw std::logic_error("pair coincidences exceed singles");
  }
  if (n_abbprime > std::min(n_ab, n_abprime)) {
    throw std::logic_error("three-fold coincidences exceed pair coincidences");
  }
}

CountSummary& CountSummary::operator+=(const CountSummary& other) {
  if (window != other.window && duration != 0 && other.duration != 0) {
    throw std::invalid_argument("cannot pool summaries with different windows");
  }
  if (duration == 0) {
    window = other.window;
  }
  n_a += other.n_a;
  n_b += other.n_b;
  n_bprime += other.n_bprime;
  n_ab += other.n_ab;
  n_abprime += other.n_abprime;
  n_bbprime += other.n_bbprime;
  n_abbprime += other.n_abbprime;
  duration += other.duration;
  return *this;
}

ThreeFoldRates three_fold_rates(const CountSummary& s) {
  return {s.rate(s.n_a), s.rate(s.n_b), s.rate(s.n_bprime), s.rate(s.n_ab), s.rate(s.n_abprime)};
}

double AccidentalEstimate::rate_3d(ThreeFoldMethod method) const {
  switch (method) {
    case ThreeFoldMethod::Paper:
      return rate_3d_paper;
    case ThreeFoldMethod::Composite:
      return rate_3d_composite;
    case ThreeFoldMethod::PureTriple:
      return rate_3d_pure_triple;
  }
  throw std::invalid_argument("unknown three-fold accidental method");
}

std::uint64_t count_pair_coincidences(const TimeTagStream& x, const TimeTagStream& y,
                                      CoincidenceWindow window, Delay offset) {
  return pair_scan(TagTimes{x.tags()}, TagTimes{y.tags()}, window.pulse_width(), offset.tau);
}

std::uint64_t count_pair_coincidences(std::span<const Picoseconds> x,
                                      std::span<const Picoseconds> y, CoincidenceWindow window,
                                      Delay offset) {
  require_sorted(x, "x");
  require_sorted(y, "y");
  return pair_scan(RawTimes{x}, RawTimes{y}, window.pulse_width(), offset.tau);
}

std::uint64_t count_triple_coincidences(const TimeTagStream& a, const TimeTagStream& b,
                                        const TimeTagStream& bprime, CoincidenceWindow window,
                                        ChannelOffsets offsets) {
  return triple_scan(TagTimes{a.tags()}, TagTimes{b.tags()}, TagTimes{bprime.tags()},
                     window.pulse_width(), offsets);
}

std::uint64_t count_triple_coincidences(std::span<const Picoseconds> a,
                                        std::span<const Picoseconds> b,
                                        std::span<const Picoseconds> bprime,
                                        CoincidenceWindow window, ChannelOffsets offsets) {
  require_sorted(a, "a");
  require_sorted(b, "b");
  require_sorted(bprime, "bprime");
  return triple_scan(RawTimes{a}, RawTimes{b}, RawTimes{bprime}, window.pulse_width(), offsets);
}

CountSummary summarize(const TimeTagStream& a, const TimeTagStream& b, const TimeTagStream& bprime,
                       CoincidenceWindow window, ChannelOffsets offsets) {
  if (a.duration() != b.duration() || a.duration() != bprime.duration()) {
    throw std::invalid_argument("summarize needs streams with a common duration (A " +
                                std::to_string(a.duration()) + ", B " +
                                std::to_string(b.duration()) + ", B' " +
                                std::to_string(bprime.duration()) + " ps)");
  }
  CountSummary s;
  s.n_a = a.size();
  s.n_b = b.size();
  s.n_bprime = bprime.size();
  // Pair counter semantics: |t_x - (t_y + offset)| < tau_p.
  s.n_ab = count_pair_coincidences(a, b, window, Delay{-offsets.b.tau});
  s.n_abprime = count_pair_coincidences(a, bprime, window, Delay{-offsets.bprime.tau});
  s.n_bbprime =
      count_pair_coincidences(b, bprime, window, Delay{offsets.b.tau - offsets.bprime.tau});
  s.n_abbprime = count_triple_coincidences(a, b, bprime, window, offsets);
  s.duration = a.duration();
  s.window = window.window();
  return s;
}

CountSummary summarize(const ChannelStreams& streams, CoincidenceWindow window,
                       ChannelOffsets offsets) {
  return summarize(streams.a, streams.b, streams.bprime, window, offsets);
}

std::uint64_t shifted_accidentals(const TimeTagStream& x, const TimeTagStream& y,
                                  CoincidenceWindow window, Delay shift) {
  const Picoseconds magnitude = shift.tau < 0 ? -shift.tau : shift.tau;
  if (magnitude < kMinAccidentalShiftWindows * window.window()) {
    throw std::invalid_argument("accidental shift " + std::to_string(shift.tau) +
                                " ps must be at least " +
                                std::to_string(kMinAccidentalShiftWindows) +
                                " coincidence windows");
  }
  return count_pair_coincidences(x, y, window, shift);
}

double accidental_rate_2d(double r_a, double r_b, double window_s) {
  if (!(r_a >= 0.0) || !(r_b >= 0.0) || !(window_s >= 0.0)) {
    throw std::invalid_argument("accidental_rate_2d inputs must be non-negative");
  }
  return window_s * r_a * r_b;
}

double accidental_rate_3d(const ThreeFoldRates& r, double window_s, double pulse_width_s,
                          ThreeFoldMethod method) {
  const bool non_negative = r.r_a >= 0.0 && r.r_b >= 0.0 && r.r_bprime >= 0.0 &&
                            r.r_ab >= 0.0 && r.r_abprime >= 0.0 && window_s >= 0.0 &&
                            pulse_width_s >= 0.0;
  if (!non_negative) {
    throw std::invalid_argument("accidental_rate_3d inputs must be non-negative");
  }
  const double pure_triple = 3.0 * pulse_width_s * pulse_width_s * r.r_a * r.r_b * r.r_bprime;
  switch (method) {
    case ThreeFoldMethod::Paper:
      return window_s * r.r_a * r.r_b;
    case ThreeFoldMethod::PureTriple:
      return pure_triple;
    case ThreeFoldMethod::Composite:
      // A real two-fold plus a random third single, both pairings.
      return window_s * (r.r_ab * r.r_bprime + r.r_abprime * r.r_b) + pure_triple;
  }
  throw std::invalid_argument("unknown three-fold accidental method");
}

AccidentalEstimate estimate_accidentals(const CountSummary& s) {
  const auto rates = three_fold_rates(s);
  const double dt = s.window_seconds();
  const double tp = dt / 2.0;
  AccidentalEstimate e;
  e.rate_2d = accidental_rate_2d(rates.r_a, rates.r_b, dt);
  e.rate_3d_paper = accidental_rate_3d(rates, dt, tp, ThreeFoldMethod::Paper);
  e.rate_3d_composite = accidental_rate_3d(rates, dt, tp, ThreeFoldMethod::Composite);
  e.rate_3d_pure_triple = accidental_rate_3d(rates, dt, tp, ThreeFoldMethod::PureTriple);
  return e;
}

}  // namespace photocorr
