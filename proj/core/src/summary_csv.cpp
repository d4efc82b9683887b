#include "photocorr/summary_csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "photocorr/timetag_io.hpp"

namespace photocorr {

std::string format_value(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::size_t export_summary_csv(std::span<const SummaryRow> rows, std::ostream& sink) {
  std::ostringstream out;
  out << kSummaryCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto& s = row.summary;
    const auto& r = row.result;
    const double fields[] = {
        static_cast<double>(s.window) / static_cast<double>(kPicosPerNano),
        s.rate(s.n_a),
        s.rate(s.n_b),
        s.rate(s.n_bprime),
        s.rate(s.n_ab),
        s.rate(s.n_abprime),
        s.rate(s.n_bbprime),
        s.rate(s.n_abbprime),
        r.accidentals.rate_2d,
        r.accidentals.rate_3d(row.method),
        r.alpha_mean,
        r.alpha_std,
        r.violation_sigma ? *r.violation_sigma : std::nan(""),
    };
    bool first = true;
    for (const double f : fields) {
      if (!first) {
        out << ',';
      }
      first = false;
      out << format_value(f);
    }
    out << '\n';
  }
  const std::string text = out.str();
  sink.write(text.data(), static_cast<std::streamsize>(text.size()));
  sink.flush();
  if (!sink) {
    throw IoError(0, "CSV sink write failed");
  }
  return rows.size();
}

}  // namespace photocorr
