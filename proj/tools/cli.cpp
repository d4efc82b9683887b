#include "cli.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "photocorr/config_file.hpp"
#include "photocorr/reference_tables.hpp"
#include "photocorr/statistics.hpp"
#include "photocorr/summary_csv.hpp"
#include "photocorr/timetag_io.hpp"

namespace photocorr::cli {

namespace {

// Failures mapped to the data/format exit code.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulateArgs {
  std::string config_path;
  std::string out_csv;
  std::string tags_path;
  std::optional<std::uint64_t> seed;
  std::string mode;
  std::optional<double> window_ns;
  std::string method;
};

struct AnalyzeArgs {
  std::string tags_path;
  double window_ns = 10.0;
  std::string mode;
  std::string method = "composite";
  bool sort = false;
  Picoseconds offset_b = 0;
  Picoseconds offset_bprime = 0;
};

struct SweepArgs {
  SimulateArgs base;
  std::string axis;
  std::vector<double> values;
};

CoincidenceWindow window_from_ns(double ns, const std::string& key) {
  const double ps = std::round(ns * static_cast<double>(kPicosPerNano));
  if (!(ps > 0.0) || ps > 1e15) {
    throw ConfigError(key, "window must be positive");
  }
  try {
    return CoincidenceWindow::from_window(static_cast<Picoseconds>(ps));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

ExperimentConfig load_config(const SimulateArgs& args) {
  ExperimentConfig config =
      args.config_path.empty() ? ExperimentConfig{} : load_experiment_config(args.config_path);
  if (const char* env = std::getenv("PCL_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    errno = 0;
    const unsigned long long s = std::strtoull(env, &end, 10);
    if (*end != '\0' || errno == ERANGE || env[0] == '-') {
      throw ConfigError("PCL_SEED", "expected an unsigned 64-bit integer");
    }
    config.seed = RandomSeed{s};
  }
  if (args.seed) {
    config.seed = RandomSeed{*args.seed};
  }
  if (!args.mode.empty()) {
    try {
      config.mode = parse_mode(args.mode);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--mode", e.what());
    }
  }
  if (args.window_ns) {
    config.window = window_from_ns(*args.window_ns, "--window-ns");
  }
  if (!args.method.empty()) {
    try {
      config.method = parse_method(args.method);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--method", e.what());
    }
  }
  config.validate();
  return config;
}

std::string run_tag_path(const std::string& base, std::uint32_t run, std::uint32_t n_runs) {
  if (n_runs == 1) {
    return base;
  }
  const std::filesystem::path p(base);
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, ".run%03u", run);
  return (p.parent_path() / (p.stem().string() + suffix + p.extension().string())).string();
}

void print_alpha(const EnsembleResult& e, const ExperimentConfig& config, std::ostream& out) {
  const auto& a = e.alpha;
  const char* label = a.mode == DetectorMode::ThreeDetector ? "alpha_3d" : "alpha_2d";
  out << "mode            " << to_string(a.mode) << '\n'
      << "runs            " << a.n_runs << " (excluded " << a.n_excluded << ")\n"
      << "window_ns       " << format_value(e.totals.window_seconds() * 1e9) << '\n'
      << "r_a             " << format_value(e.totals.rate(e.totals.n_a)) << '\n'
      << "r_b             " << format_value(e.totals.rate(e.totals.n_b)) << '\n'
      << "r_bprime        " << format_value(e.totals.rate(e.totals.n_bprime)) << '\n'
      << "r_ab            " << format_value(e.totals.rate(e.totals.n_ab)) << '\n'
      << "r_abprime       " << format_value(e.totals.rate(e.totals.n_abprime)) << '\n'
      << "r_abbprime      " << format_value(e.totals.rate(e.totals.n_abbprime)) << '\n'
      << label << "        " << format_value(a.alpha_mean) << '\n'
      << "alpha_std       " << format_value(a.alpha_std) << '\n'
      << "violation_sigma "
      << (a.violation_sigma ? format_value(*a.violation_sigma) : std::string("undefined")) << '\n'
      << "acc_2d_hz       " << format_value(a.accidentals.rate_2d) << '\n'
      << "acc_3d_hz       " << format_value(a.accidentals.rate_3d(config.method)) << " ("
      << to_string(config.method) << ")\n";
}

void write_csv(const std::vector<SummaryRow>& rows, const std::string& path, std::ostream& out) {
  if (path == "-") {
    export_summary_csv(rows, out);
    return;
  }
  std::ofstream file(path, std::ios::trunc);
  if (!file) {
    throw DataError("cannot open " + path + " for writing");
  }
  export_summary_csv(rows, file);
}

EnsembleResult run_with_tags(const ExperimentConfig& config, const std::string& tags_path,
                             std::ostream& err) {
  EnsembleOptions options;
  options.warn = [&err](std::string_view msg) { err << "warning: " << msg << '\n'; };
  if (tags_path.empty()) {
    return run_ensemble(config, options);
  }
  std::vector<CountSummary> runs;
  runs.reserve(config.n_runs);
  for (std::uint32_t i = 0; i < config.n_runs; ++i) {
    const auto streams = simulate_run(config, i);
    write_tag_file(streams, run_tag_path(tags_path, i, config.n_runs));
    runs.push_back(summarize(streams, config.window, config.offsets));
  }
  return fold_ensemble(std::move(runs), config.mode, options);
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = load_config(args);
  const auto result = run_with_tags(config, args.tags_path, err);
  print_alpha(result, config, out);
  write_csv({SummaryRow{config.method, result.totals, result.alpha}}, args.out_csv, out);
  return kExitOk;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  const ExperimentConfig base = load_config(args.base);
  if (args.values.empty()) {
    throw ConfigError("--values", "need at least one value");
  }
  std::vector<SummaryRow> rows;
  for (const double v : args.values) {
    ExperimentConfig config = base;
    if (args.axis == "window") {
      config.window = window_from_ns(v, "--values");
    } else {
      if (!(v > 0.0)) {
        throw ConfigError("--values", "rates must be positive");
      }
      config.source.mean_rate = v;
    }
    config.validate();
    EnsembleOptions options;
    options.warn = [&err](std::string_view msg) { err << "warning: " << msg << '\n'; };
    const auto result = run_ensemble(config, options);
    out << args.axis << " = " << format_value(v) << ": alpha " << format_value(result.alpha.alpha_mean)
        << " +- " << format_value(result.alpha.alpha_std) << '\n';
    rows.push_back({config.method, result.totals, result.alpha});
  }
  write_csv(rows, args.base.out_csv, out);
  return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
  ReadOptions read_options;
  read_options.order = args.sort ? SortPolicy::Sort : SortPolicy::Reject;
  const ChannelStreams streams = read_tag_file(args.tags_path, read_options);
  const CoincidenceWindow window = window_from_ns(args.window_ns, "--window-ns");
  DetectorMode mode = streams.bprime.size() == 0 ? DetectorMode::TwoDetector : DetectorMode::ThreeDetector;
  ThreeFoldMethod method;
  try {
    if (!args.mode.empty()) {
      mode = parse_mode(args.mode);
    }
    method = parse_method(args.method);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(args.mode.empty() ? "--method" : "--mode/--method", e.what());
  }
  const ChannelOffsets offsets{Delay{args.offset_b}, Delay{args.offset_bprime}};
  const CountSummary s = summarize(streams, window, offsets);
  const auto acc = estimate_accidentals(s);

  out << "duration_s      " << format_value(s.seconds()) << '\n'
      << "window_ns       " << format_value(s.window_seconds() * 1e9) << '\n'
      << "n_a             " << s.n_a << '\n'
      << "n_b             " << s.n_b << '\n'
      << "n_bprime        " << s.n_bprime << '\n'
      << "n_ab            " << s.n_ab << '\n'
      << "n_abprime       " << s.n_abprime << '\n'
      << "n_bbprime       " << s.n_bbprime << '\n'
      << "n_abbprime      " << s.n_abbprime << '\n';
  const char* label = mode == DetectorMode::ThreeDetector ? "alpha_3d" : "alpha_2d";
  try {
    out << label << "        " << format_value(alpha(s, mode)) << '\n';
  } catch (const UndefinedStatistic& e) {
    out << label << "        undefined (" << e.what() << ")\n";
  }
  try {
    out << "alpha_poisson   " << format_value(poisson_alpha_uncertainty(s, mode)) << '\n';
  } catch (const UndefinedStatistic& e) {
    out << "alpha_poisson   undefined (" << e.what() << ")\n";
  }
  out << "acc_2d_hz       " << format_value(acc.rate_2d) << '\n'
      << "acc_3d_hz       paper " << format_value(acc.rate_3d_paper) << ", composite "
      << format_value(acc.rate_3d_composite) << ", puretriple "
      << format_value(acc.rate_3d_pure_triple) << " (selected " << to_string(method) << ")\n";
  return kExitOk;
}

int cmd_reproduce(const std::string& table, std::ostream& out) {
  if (table == "1" || table == "table1" || table == "all") {
    print_report(reproduce_two_detector_table(), out);
  }
  if (table == "2" || table == "table2" || table == "all") {
    print_report(reproduce_three_detector_table(), out);
  }
  return kExitOk;
}

void add_simulate_options(CLI::App* cmd, SimulateArgs& args) {
  cmd->add_option("--config", args.config_path, "Experiment file (defaults: heralded 3d setup)");
  cmd->add_option("--seed", args.seed, "Override the seed (takes precedence over PCL_SEED)");
  cmd->add_option("--mode", args.mode, "Detector mode")->check(CLI::IsMember({"2d", "3d"}));
  cmd->add_option("--window-ns", args.window_ns, "Coincidence window Dt in ns");
  cmd->add_option("--method", args.method, "Three-fold accidental estimate")
      ->check(CLI::IsMember({"paper", "composite", "puretriple"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon anti-correlation simulator and analyzer", "photocorr"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run an ensemble and write a CSV summary");
  add_simulate_options(simulate, sim);
  simulate->add_option("--out", sim.out_csv, "CSV summary path ('-' for stdout)")->required();
  simulate->add_option("--tags", sim.tags_path, "Write PTAG files per run (run index inserted)");

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "Count coincidences in a PTAG file");
  analyze->add_option("--tags", ana.tags_path, "PTAG file")->required();
  analyze->add_option("--window-ns", ana.window_ns, "Coincidence window Dt in ns")
      ->capture_default_str();
  analyze->add_option("--mode", ana.mode, "Detector mode (default: 3d if B' tags present)")
      ->check(CLI::IsMember({"2d", "3d"}));
  analyze->add_option("--method", ana.method, "Selected three-fold estimate")
      ->check(CLI::IsMember({"paper", "composite", "puretriple"}));
  analyze->add_flag("--sort", ana.sort, "Sort out-of-order records instead of rejecting");
  analyze->add_option("--offset-b-ps", ana.offset_b, "Delay of B relative to A");
  analyze->add_option("--offset-bprime-ps", ana.offset_bprime, "Delay of B' relative to A");

  std::string table = "all";
  auto* reproduce = app.add_subcommand("reproduce", "Recompute the reference tables");
  reproduce->add_option("--table", table, "1, 2 or all")
      ->check(CLI::IsMember({"1", "2", "table1", "table2", "all"}));

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Run one ensemble per parameter value");
  add_simulate_options(sweep, sw.base);
  sweep->add_option("--out", sw.base.out_csv, "CSV summary path ('-' for stdout)")->required();
  sweep->add_option("--axis", sw.axis, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"window", "rate"}));
  sweep->add_option("--values", sw.values, "Comma-separated values (ns or Hz)")
      ->required()
      ->delimiter(',');

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (simulate->parsed()) {
      return cmd_simulate(sim, out, err);
    }
    if (analyze->parsed()) {
      return cmd_analyze(ana, out);
    }
    if (reproduce->parsed()) {
      return cmd_reproduce(table, out);
    }
    return cmd_sweep(sw, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const TagFileError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const UndefinedStatistic& e) {
    err << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace photocorr::cli
