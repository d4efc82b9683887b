#include "photocorr/config_file.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace photocorr {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(key, "expected a number, got '" + text + "'");
  }
  return v;
}

std::int64_t to_int(const std::string& key, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    // Accept integral values written in floating notation, e.g. 5e3.
    const double d = to_double(key, text);
    if (d != std::floor(d) || std::fabs(d) > 9.0e18) {
      throw ConfigError(key, "expected an integer, got '" + text + "'");
    }
    return static_cast<std::int64_t>(d);
  }
  return v;
}

SourceKind parse_kind(const std::string& key, std::string_view v) {
  if (v == "coherent") return SourceKind::Coherent;
  if (v == "thermal") return SourceKind::Thermal;
  if (v == "spdc") return SourceKind::SpdcPairs;
  throw ConfigError(key, "expected coherent, thermal or spdc");
}

FieldModel parse_model(const std::string& key, std::string_view v) {
  if (v == "quantum") return FieldModel::Quantum;
  if (v == "semiclassical") return FieldModel::SemiClassical;
  throw ConfigError(key, "expected quantum or semiclassical");
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key, const std::string&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const auto table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["seed"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      errno = 0;
      char* end = nullptr;
      const unsigned long long s = std::strtoull(v.c_str(), &end, 10);
      if (v.empty() || v[0] == '-' || end != v.c_str() + v.size() || errno == ERANGE) {
        throw ConfigError(k, "expected an unsigned 64-bit integer");
      }
      c.seed = RandomSeed{s};
    };
    t["mode"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      try {
        c.mode = parse_mode(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(k, e.what());
      }
    };
    t["model"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.model = parse_model(k, v);
    };
    t["analysis.method"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      try {
        c.method = parse_method(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(k, e.what());
      }
    };
    t["source.kind"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.source.kind = parse_kind(k, v);
    };
    t["source.rate_hz"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.source.mean_rate = to_double(k, v);
    };
    t["source.coherence_time_ps"] = [](ExperimentConfig& c, const std::string& k,
                                       const std::string& v) {
      c.source.coherence_time = to_int(k, v);
    };
    t["source.pair_jitter_ps"] = [](ExperimentConfig& c, const std::string& k,
                                    const std::string& v) { c.source.pair_jitter = to_int(k, v); };
    t["splitter.transmit"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.splitter.transmit = to_double(k, v);
    };
    t["splitter.reflect"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.splitter.reflect = to_double(k, v);
    };
    for (const Channel ch : kAllChannels) {
      const std::string prefix = ch == Channel::A   ? "detectors.a."
                                 : ch == Channel::B ? "detectors.b."
                                                    : "detectors.bprime.";
      t[prefix + "efficiency"] = [ch](ExperimentConfig& c, const std::string& k,
                                      const std::string& v) {
        c.detectors[ch].efficiency = to_double(k, v);
      };
      t[prefix + "dark_rate_hz"] = [ch](ExperimentConfig& c, const std::string& k,
                                        const std::string& v) {
        c.detectors[ch].dark_rate = to_double(k, v);
      };
      t[prefix + "dead_time_ps"] = [ch](ExperimentConfig& c, const std::string& k,
                                        const std::string& v) {
        c.detectors[ch].dead_time = to_int(k, v);
      };
      t[prefix + "pulse_width_ps"] = [ch](ExperimentConfig& c, const std::string& k,
                                          const std::string& v) {
        c.detectors[ch].pulse_width = to_int(k, v);
      };
      t[prefix + "jitter_ps"] = [ch](ExperimentConfig& c, const std::string& k,
                                     const std::string& v) {
        c.detectors[ch].jitter = to_int(k, v);
      };
    }
    t["window.pulse_width_ps"] = [](ExperimentConfig& c, const std::string& k,
                                    const std::string& v) {
      try {
        c.window = CoincidenceWindow(to_int(k, v));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ConfigError(k, e.what());
      }
    };
    t["offsets.b_ps"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.offsets.b = Delay{to_int(k, v)};
    };
    t["offsets.bprime_ps"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.offsets.bprime = Delay{to_int(k, v)};
    };
    t["run.count"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      const auto n = to_int(k, v);
      if (n < 1 || n > 1'000'000) {
        throw ConfigError(k, "run count must be between 1 and 1000000");
      }
      c.n_runs = static_cast<std::uint32_t>(n);
    };
    t["run.duration_s"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      try {
        c.run_duration = seconds_to_ps(to_double(k, v));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ConfigError(k, e.what());
      }
    };
    t["trace.bin_width_ps"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.trace_bin_width = to_int(k, v);
      if (c.trace_bin_width < 0) {
        throw ConfigError(k, "bin width must be non-negative (0 = automatic)");
      }
    };
    return t;
  }();
  return table;
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DetectorMode parse_mode(std::string_view text) {
  if (text == "2d") return DetectorMode::TwoDetector;
  if (text == "3d") return DetectorMode::ThreeDetector;
  throw std::invalid_argument("mode must be 2d or 3d, got '" + std::string(text) + "'");
}

ThreeFoldMethod parse_method(std::string_view text) {
  if (text == "paper") return ThreeFoldMethod::Paper;
  if (text == "composite") return ThreeFoldMethod::Composite;
  if (text == "puretriple") return ThreeFoldMethod::PureTriple;
  throw std::invalid_argument("method must be paper, composite or puretriple, got '" +
                              std::string(text) + "'");
}

std::string_view to_string(DetectorMode mode) {
  return mode == DetectorMode::TwoDetector ? "2d" : "3d";
}

std::string_view to_string(ThreeFoldMethod method) {
  switch (method) {
    case ThreeFoldMethod::Paper:
      return "paper";
    case ThreeFoldMethod::Composite:
      return "composite";
    case ThreeFoldMethod::PureTriple:
      return "puretriple";
  }
  return "?";
}

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Coherent:
      return "coherent";
    case SourceKind::Thermal:
      return "thermal";
    case SourceKind::SpdcPairs:
      return "spdc";
  }
  return "?";
}

std::string_view to_string(FieldModel model) {
  return model == FieldModel::Quantum ? "quantum" : "semiclassical";
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no), "missing key");
    }
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError(key, "unknown configuration key");
    }
    if (!seen.insert(key).second) {
      throw ConfigError(key, "duplicate configuration key");
    }
    it->second(config, key, value);
  }
  config.validate();
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw ConfigError(path, "cannot open configuration file");
  }
  return parse_experiment_config(file);
}

std::string render_experiment_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "seed = " << c.seed.value << '\n'
      << "mode = " << to_string(c.mode) << '\n'
      << "model = " << to_string(c.model) << '\n'
      << "analysis.method = " << to_string(c.method) << '\n'
      << "source.kind = " << to_string(c.source.kind) << '\n'
      << "source.rate_hz = " << number(c.source.mean_rate) << '\n'
      << "source.coherence_time_ps = " << c.source.coherence_time << '\n'
      << "source.pair_jitter_ps = " << c.source.pair_jitter << '\n'
      << "splitter.transmit = " << number(c.splitter.transmit) << '\n'
      << "splitter.reflect = " << number(c.splitter.reflect) << '\n';
  for (const Channel ch : kAllChannels) {
    const auto& d = c.detectors[ch];
    const std::string p = ch == Channel::A   ? "detectors.a."
                          : ch == Channel::B ? "detectors.b."
                                             : "detectors.bprime.";
    out << p << "efficiency = " << number(d.efficiency) << '\n'
        << p << "dark_rate_hz = " << number(d.dark_rate) << '\n'
        << p << "dead_time_ps = " << d.dead_time << '\n'
        << p << "pulse_width_ps = " << d.pulse_width << '\n'
        << p << "jitter_ps = " << d.jitter << '\n';
  }
  out << "window.pulse_width_ps = " << c.window.pulse_width() << '\n'
      << "offsets.b_ps = " << c.offsets.b.tau << '\n'
      << "offsets.bprime_ps = " << c.offsets.bprime.tau << '\n'
      << "run.count = " << c.n_runs << '\n'
      << "run.duration_s = " << number(to_seconds(c.run_duration)) << '\n'
      << "trace.bin_width_ps = " << c.trace_bin_width << '\n';
  return out.str();
}

}  // namespace photocorr
