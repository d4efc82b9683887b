#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "photocorr/coincidence.hpp"
#include "photocorr/experiment.hpp"

namespace photocorr {

// Raised when a statistic's denominator is zero.
class UndefinedStatistic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class ChannelPair { AB, ABprime, BBprime };

struct AlphaResult {
  double alpha_mean = 0.0;
  double alpha_std = 0.0;  // sample std across runs; 0 for a single run
  std::size_t n_runs = 0;  // runs contributing to the mean
  std::size_t n_excluded = 0;
  std::optional<double> violation_sigma;  // set only when alpha_std > 0
  AccidentalEstimate accidentals;
  DetectorMode mode = DetectorMode::ThreeDetector;
};

struct EnsembleResult {
  AlphaResult alpha;
  CountSummary totals;  // counts pooled over every run
  std::vector<std::optional<double>> run_alphas;  // empty entries were excluded
  std::vector<CountSummary> runs;
};

// (N_xy / (N_x N_y)) * (T / Dt). Throws UndefinedStatistic for zero singles.
double alpha_2d(const CountSummary& summary, ChannelPair pair = ChannelPair::AB);

// R_xy / (R_x R_y Dt).
double alpha_2d_from_rates(double r_x, double r_y, double r_xy, double window_s);

// N_ABB' N_A / (N_AB N_AB'). Throws UndefinedStatistic when N_AB or N_AB' is zero.
double alpha_3d(const CountSummary& summary);

// R_ABB' R_A / (R_AB R_AB').
double alpha_3d_from_rates(double r_a, double r_ab, double r_abprime, double r_abbprime);

double alpha(const CountSummary& summary, DetectorMode mode);

// (1 - mean) / std; negative means no violation.
double violation_sigma(double alpha_mean, double alpha_std);

// Perfect pair detection: 1 / (Dt R).
double ideal_alpha_2d(double twin_rate, double window_s);

// First-order counting-noise uncertainty: alpha * sqrt(sum 1/N_i) over the
// counts in the alpha formula (N_AB, N_A, N_B for two detectors; N_ABB',
// N_AB, N_AB', N_A for three).
double poisson_alpha_uncertainty(const CountSummary& summary, DetectorMode mode,
                                 ChannelPair pair = ChannelPair::AB);

struct EnsembleOptions {
  // Worker threads; 0 uses std::thread::hardware_concurrency().
  unsigned workers = 0;
  // Receives one message per excluded run.
  std::function<void(std::string_view)> warn;
};

// Runs config.n_runs independent simulations (child seeds of config.seed),
// computes alpha per run and folds the results in run-index order.
//
// Runs whose alpha is undefined are excluded and reported through
// options.warn; UndefinedStatistic is thrown if every run is excluded.
EnsembleResult run_ensemble(const ExperimentConfig& config, const EnsembleOptions& options = {});

// Same fold over precomputed per-run summaries.
EnsembleResult fold_ensemble(std::vector<CountSummary> runs, DetectorMode mode,
                             const EnsembleOptions& options = {});

}  // namespace photocorr
