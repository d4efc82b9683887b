#pragma once

// Slow reference implementations used only by the tests.

#include <cstdint>
#include <span>
#include <vector>

#include "photocorr/core.hpp"

namespace photocorr::testing {

// Maximum one-to-one matching between x and y where an edge exists when
// |x - (y + offset)| < pulse_width. Kuhn's augmenting paths, O(V E).
std::uint64_t max_matching(std::span<const Picoseconds> x, std::span<const Picoseconds> y,
                           Picoseconds pulse_width, Picoseconds offset);

// For each x in order, take the earliest unused y in the window. O(n^2).
std::uint64_t greedy_pairs(std::span<const Picoseconds> x, std::span<const Picoseconds> y,
                           Picoseconds pulse_width, Picoseconds offset);

// Herald-centred triples by exhaustive scanning: each A takes the earliest
// unused B and B' in its window; both are used only when both exist.
std::uint64_t brute_triples(std::span<const Picoseconds> a, std::span<const Picoseconds> b,
                            std::span<const Picoseconds> bp, Picoseconds pulse_width,
                            Picoseconds offset_b, Picoseconds offset_bp);

// One-sample Kolmogorov-Smirnov against Exp(rate); returns the asymptotic p-value.
double ks_exponential_pvalue(std::span<const double> samples, double rate);

// Two-sample KS p-value.
double ks_two_sample_pvalue(std::vector<double> x, std::vector<double> y);

// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

// Sorted random times, n of them, in [0, duration).
std::vector<Picoseconds> random_times(std::uint64_t seed, std::size_t n, Picoseconds duration);

}  // namespace photocorr::testing
