#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "photocorr/coincidence.hpp"
#include "photocorr/core.hpp"
#include "photocorr/detection.hpp"
#include "photocorr/sources.hpp"

namespace photocorr {

enum class DetectorMode { TwoDetector, ThreeDetector };
enum class FieldModel { SemiClassical, Quantum };

struct DetectorSet {
  DetectorConfig a;
  DetectorConfig b;
  DetectorConfig bprime;

  [[nodiscard]] const DetectorConfig& operator[](Channel c) const;
  DetectorConfig& operator[](Channel c);
};

// Full description of a simulated apparatus and its run schedule.
//
// Pipelines by (model, source, mode):
//   Quantum  + SpdcPairs, 3d: herald -> A; partner -> splitter -> B / B'
//   Quantum  + SpdcPairs, 2d: herald -> A; partner -> B (no splitter)
//   Quantum  + Coherent,  2d: photons -> splitter -> A / B
//   SemiClassical + Coherent|Thermal, 2d: trace -> splitter -> A / B
//
// The defaults describe the heralded single-photon measurement: 14.8 kHz
// herald singles, tau_p = 5 ns, 20 runs of 30 s.
struct ExperimentConfig {
  SourceConfig source;
  SplitterConfig splitter;
  DetectorSet detectors;
  CoincidenceWindow window{5'000};
  ChannelOffsets offsets;
  std::uint32_t n_runs = 20;
  Picoseconds run_duration = 30 * kPicosPerSecond;
  RandomSeed seed{20140512};
  DetectorMode mode = DetectorMode::ThreeDetector;
  FieldModel model = FieldModel::Quantum;
  ThreeFoldMethod method = ThreeFoldMethod::Composite;
  // Semi-classical trace resolution; 0 picks one automatically.
  Picoseconds trace_bin_width = 0;

  ExperimentConfig();

  // Throws ConfigError naming the offending key.
  void validate() const;

  // Bin width actually used for semi-classical traces.
  [[nodiscard]] Picoseconds effective_bin_width() const;
};

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Simulates one run; deterministic in (config, run_index).
ChannelStreams simulate_run(const ExperimentConfig& config, std::uint32_t run_index);

}  // namespace photocorr
