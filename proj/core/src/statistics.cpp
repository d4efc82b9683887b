#include "photocorr/statistics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace photocorr {

namespace {

struct PairCounts {
  std::uint64_t n_x;
  std::uint64_t n_y;
  std::uint64_t n_xy;
};

PairCounts pair_counts(const CountSummary& s, ChannelPair pair) {
  switch (pair) {
    case ChannelPair::AB:
      return {s.n_a, s.n_b, s.n_ab};
    case ChannelPair::ABprime:
      return {s.n_a, s.n_bprime, s.n_abprime};
    case ChannelPair::BBprime:
      return {s.n_b, s.n_bprime, s.n_bbprime};
  }
  throw std::invalid_argument("unknown channel pair");
}

}  // namespace

double alpha_2d(const CountSummary& summary, ChannelPair pair) {
  const auto c = pair_counts(summary, pair);
  if (c.n_x == 0 || c.n_y == 0) {
    throw UndefinedStatistic("two-detector alpha undefined: a singles count is zero");
  }
  const double nx = static_cast<double>(c.n_x);
  const double ny = static_cast<double>(c.n_y);
  return static_cast<double>(c.n_xy) / (nx * ny) *
         (static_cast<double>(summary.duration) / static_cast<double>(summary.window));
}

double alpha_2d_from_rates(double r_x, double r_y, double r_xy, double window_s) {
  if (!(r_x > 0.0) || !(r_y > 0.0) || !(window_s > 0.0)) {
    throw UndefinedStatistic("two-detector alpha undefined: singles rates and window must be positive");
  }
  return r_xy / (r_x * r_y * window_s);
}

double alpha_3d(const CountSummary& summary) {
  if (summary.n_ab == 0 || summary.n_abprime == 0) {
    throw UndefinedStatistic("three-detector alpha undefined: N_AB or N_AB' is zero");
  }
  return static_cast<double>(summary.n_abbprime) * static_cast<double>(summary.n_a) /
         (static_cast<double>(summary.n_ab) * static_cast<double>(summary.n_abprime));
}

double alpha_3d_from_rates(double r_a, double r_ab, double r_abprime, double r_abbprime) {
  if (!(r_ab > 0.0) || !(r_abprime > 0.0)) {
    throw UndefinedStatistic("three-detector alpha undefined: R_AB or R_AB' is zero");
  }
  return r_abbprime * r_a / (r_ab * r_abprime);
}

double alpha(const CountSummary& summary, DetectorMode mode) {
  return mode == DetectorMode::ThreeDetector ? alpha_3d(summary) : alpha_2d(summary);
}

double violation_sigma(double alpha_mean, double alpha_std) {
  if (!(alpha_std > 0.0)) {
    throw UndefinedStatistic("violation undefined for zero alpha spread");
  }
  return (1.0 - alpha_mean) / alpha_std;
}

double ideal_alpha_2d(double twin_rate, double window_s) {
  if (!(twin_rate > 0.0) || !(window_s > 0.0)) {
    throw std::invalid_argument("ideal alpha needs positive twin rate and window");
  }
  return 1.0 / (window_s * twin_rate);
}

double poisson_alpha_uncertainty(const CountSummary& summary, DetectorMode mode,
                                 ChannelPair pair) {
  std::vector<std::uint64_t> counts;
  if (mode == DetectorMode::ThreeDetector) {
    counts = {summary.n_abbprime, summary.n_ab, summary.n_abprime, summary.n_a};
  } else {
    const auto c = pair_counts(summary, pair);
    counts = {c.n_xy, c.n_x, c.n_y};
  }
  double inverse_sum = 0.0;
  for (const auto n : counts) {
    if (n == 0) {
      throw UndefinedStatistic("Poisson uncertainty undefined: a count in the alpha formula is zero");
    }
    inverse_sum += 1.0 / static_cast<double>(n);
  }
  const double a = mode == DetectorMode::ThreeDetector ? alpha_3d(summary) : alpha_2d(summary, pair);
  return a * std::sqrt(inverse_sum);
}

EnsembleResult fold_ensemble(std::vector<CountSummary> runs, DetectorMode mode,
                             const EnsembleOptions& options) {
  EnsembleResult result;
  result.alpha.mode = mode;
  result.run_alphas.reserve(runs.size());
  std::vector<double> included;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    result.totals += runs[i];
    try {
      const double a = alpha(runs[i], mode);
      result.run_alphas.emplace_back(a);
      included.push_back(a);
    } catch (const UndefinedStatistic& e) {
      result.run_alphas.emplace_back(std::nullopt);
      ++result.alpha.n_excluded;
      if (options.warn) {
        options.warn("run " + std::to_string(i) + " excluded: " + e.what());
      }
    }
  }
  result.runs = std::move(runs);
  if (included.empty()) {
    throw UndefinedStatistic("every run was excluded: alpha undefined for the ensemble");
  }

  // Deviations from the first value keep identical runs at exactly zero spread.
  const auto n = static_cast<double>(included.size());
  const double pivot = included.front();
  double sum = 0.0;
  for (const double a : included) {
    sum += a - pivot;
  }
  const double shift = sum / n;
  const double mean = pivot + shift;
  double ss = 0.0;
  for (const double a : included) {
    ss += (a - pivot - shift) * (a - pivot - shift);
  }
  result.alpha.alpha_mean = mean;
  result.alpha.alpha_std = included.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  result.alpha.n_runs = included.size();
  if (result.alpha.alpha_std > 0.0) {
    result.alpha.violation_sigma = violation_sigma(mean, result.alpha.alpha_std);
  }
  result.alpha.accidentals = estimate_accidentals(result.totals);
  return result;
}

EnsembleResult run_ensemble(const ExperimentConfig& config, const EnsembleOptions& options) {
  config.validate();
  std::vector<CountSummary> runs(config.n_runs);
  unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, config.n_runs);

  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::uint32_t i = next.fetch_add(1);
      if (i >= config.n_runs) {
        return;
      }
      try {
        const auto streams = simulate_run(config, i);
        runs[i] = summarize(streams, config.window, config.offsets);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next.store(config.n_runs);
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return fold_ensemble(std::move(runs), config.mode, options);
}

}  // namespace photocorr
