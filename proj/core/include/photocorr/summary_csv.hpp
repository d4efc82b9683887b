#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "photocorr/coincidence.hpp"
#include "photocorr/statistics.hpp"

namespace photocorr {

// One line of a result table. acc_3d is reported with `method`.
struct SummaryRow {
  ThreeFoldMethod method = ThreeFoldMethod::Composite;
  CountSummary summary;
  AlphaResult result;
};

inline constexpr const char* kSummaryCsvHeader =
    "window_ns,r_a,r_b,r_bprime,r_ab,r_abprime,r_bbprime,r_abbprime,acc_2d,acc_3d,alpha,"
    "alpha_std,violation_sigma";

// Header then one row per result; rates in Hz, 6 significant digits, "nan"
// for an undefined violation. Throws IoError on sink failure.
std::size_t export_summary_csv(std::span<const SummaryRow> rows, std::ostream& sink);

// Six-significant-digit rendering used by the CSV writer and the CLI.
std::string format_value(double value);

}  // namespace photocorr
