#pragma once

#include <span>
#include <vector>

#include "photocorr/core.hpp"
#include "photocorr/random.hpp"
#include "photocorr/sources.hpp"

namespace photocorr {

struct DetectorConfig {
  double efficiency = 1.0;
  double dark_rate = 0.0;           // counts/s
  Picoseconds dead_time = 50'000;   // non-paralyzable
  Picoseconds pulse_width = 5'000;  // tau_p
  Picoseconds jitter = 0;           // RMS

  void validate() const;
};

// Largest mean count per trace bin accepted by detect_intensity.
inline constexpr double kMaxBinCountProbability = 0.1;

// Photon-counting detector: each photon survives with probability
// efficiency, survivors get Gaussian timing jitter, Poisson dark counts are
// merged in, and the dead-time filter runs last. Tags pushed outside
// [0, duration) by jitter are dropped.
TimeTagStream detect_photons(const TimeTagStream& photons, const DetectorConfig& config,
                             RandomSeed seed, Channel channel);

// Semi-classical photodetection of a classical intensity: an inhomogeneous
// Poisson process with rate efficiency * I(t), followed by the same jitter,
// dark-count and dead-time stages as detect_photons. Every bin must satisfy
// efficiency * I * bin_width < kMaxBinCountProbability.
TimeTagStream detect_intensity(const IntensityTrace& trace, const DetectorConfig& config,
                               RandomSeed seed, Channel channel);

// Greedy forward pass: keep a tag iff it is at least dead_time after the last kept tag.
TimeTagStream apply_dead_time(const TimeTagStream& tags, Picoseconds dead_time);

// The stages below let a long run be processed in chunks. Raw times are
// unsorted and unclipped until finalize_detection.

// Throws std::invalid_argument naming the first bin outside the linear regime.
void check_linear_regime(const IntensityTrace& trace, double efficiency);

// Thinning by efficiency plus jitter; appends offset + t for each survivor.
void thin_and_jitter(std::span<const TimeTag> photons, const DetectorConfig& config, Rng& rng,
                     Picoseconds offset, std::vector<Picoseconds>& out);

// Poisson sampling of efficiency * trace plus jitter; appends offset + t.
void sample_intensity(const IntensityTrace& trace, const DetectorConfig& config, Rng& rng,
                      Picoseconds offset, std::vector<Picoseconds>& out);

// Clip to [0, duration), add dark counts, sort, apply dead time.
TimeTagStream finalize_detection(std::vector<Picoseconds> raw, const DetectorConfig& config,
                                 Picoseconds duration, RandomSeed dark_seed, Channel channel);

}  // namespace photocorr
