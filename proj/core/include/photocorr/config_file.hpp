#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "photocorr/experiment.hpp"

namespace photocorr {

// Flat key-value experiment files:
//
//   # heralded single photons
//   source.kind = spdc
//   source.rate_hz = 370000
//   detectors.a.efficiency = 0.04
//   window.pulse_width_ps = 5000
//
// One `key = value` per line; `#` starts a comment. Keys not present keep
// their ExperimentConfig defaults. Unknown keys, duplicates and malformed
// values raise ConfigError naming the key (or "line N").
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);

// Canonical file text; parse_experiment_config(render(c)) reproduces c.
std::string render_experiment_config(const ExperimentConfig& config);

// Parsers shared with the command line.
DetectorMode parse_mode(std::string_view text);
ThreeFoldMethod parse_method(std::string_view text);
std::string_view to_string(DetectorMode mode);
std::string_view to_string(ThreeFoldMethod method);
std::string_view to_string(SourceKind kind);
std::string_view to_string(FieldModel model);

}  // namespace photocorr
