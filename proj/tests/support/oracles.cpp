#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace photocorr::testing {

namespace {

bool overlaps(Picoseconds x, Picoseconds y, Picoseconds pw, Picoseconds offset) {
  const Picoseconds d = x - (y + offset);
  return d < pw && -d < pw;
}

// Kolmogorov distribution tail Q(lambda).
double kolmogorov_q(double lambda) {
  if (lambda < 0.2) {
    return 1.0;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-12) {
      break;
    }
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

std::uint64_t max_matching(std::span<const Picoseconds> x, std::span<const Picoseconds> y,
                           Picoseconds pulse_width, Picoseconds offset) {
  std::vector<std::vector<std::size_t>> adj(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (overlaps(x[i], y[j], pulse_width, offset)) {
        adj[i].push_back(j);
      }
    }
  }
  std::vector<long> owner(y.size(), -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (const std::size_t j : adj[i]) {
      if (seen[j]) {
        continue;
      }
      seen[j] = 1;
      if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]))) {
        owner[j] = static_cast<long>(i);
        return true;
      }
    }
    return false;
  };
  std::uint64_t matched = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    seen.assign(y.size(), 0);
    if (augment(i)) {
      ++matched;
    }
  }
  return matched;
}

std::uint64_t greedy_pairs(std::span<const Picoseconds> x, std::span<const Picoseconds> y,
                           Picoseconds pulse_width, Picoseconds offset) {
  std::vector<char> used(y.size(), 0);
  std::uint64_t count = 0;
  for (const Picoseconds tx : x) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!used[j] && overlaps(tx, y[j], pulse_width, offset)) {
        used[j] = 1;
        ++count;
        break;
      }
    }
  }
  return count;
}

std::uint64_t brute_triples(std::span<const Picoseconds> a, std::span<const Picoseconds> b,
                            std::span<const Picoseconds> bp, Picoseconds pulse_width,
                            Picoseconds offset_b, Picoseconds offset_bp) {
  std::vector<char> used_b(b.size(), 0);
  std::vector<char> used_bp(bp.size(), 0);
  std::uint64_t count = 0;
  for (const Picoseconds ta : a) {
    long jb = -1;
    for (std::size_t j = 0; j < b.size() && jb < 0; ++j) {
      if (!used_b[j] && overlaps(b[j], ta, pulse_width, offset_b)) {
        jb = static_cast<long>(j);
      }
    }
    long jbp = -1;
    for (std::size_t j = 0; j < bp.size() && jbp < 0; ++j) {
      if (!used_bp[j] && overlaps(bp[j], ta, pulse_width, offset_bp)) {
        jbp = static_cast<long>(j);
      }
    }
    if (jb >= 0 && jbp >= 0) {
      used_b[static_cast<std::size_t>(jb)] = 1;
      used_bp[static_cast<std::size_t>(jbp)] = 1;
      ++count;
    }
  }
  return count;
}

double ks_exponential_pvalue(std::span<const double> samples, double rate) {
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double cdf = 1.0 - std::exp(-rate * s[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  const double sn = std::sqrt(n);
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

double ks_two_sample_pvalue(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  return kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
}

double chi_square_sf(double statistic, double dof) {
  // Wilson-Hilferty normal approximation; ample for dof >= 30.
  const double k = dof;
  const double z = (std::cbrt(statistic / k) - (1.0 - 2.0 / (9.0 * k))) / std::sqrt(2.0 / (9.0 * k));
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

std::vector<Picoseconds> random_times(std::uint64_t seed, std::size_t n, Picoseconds duration) {
  std::mt19937_64 gen(seed);
  std::vector<Picoseconds> t(n);
  for (auto& v : t) {
    v = static_cast<Picoseconds>(gen() % static_cast<std::uint64_t>(duration));
  }
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace photocorr::testing
