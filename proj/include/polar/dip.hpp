#pragma once

#include <cstdint>
#include <span>

#include "polar/distributions.hpp"

namespace polar {

/// Hartigan & Hartigan dip of the empirical CDF of a sorted sequence: the
/// sup-norm distance to the nearest unimodal CDF. Never below 1/(2n).
///
/// Works on any non-decreasing sequence (the bootstrap feeds raw uniform
/// draws on [0, 1] through this overload).
[[nodiscard]] double dip_of_sorted(std::span<const double> sorted);

/// Throws TooFewPoints for n < 4.
[[nodiscard]] double dip_statistic(const ScoreSample& sample);

struct DipResult {
  double statistic = 0.0;
  double pvalue = 1.0;
  std::uint32_t bootstrap_count = 0;
};

/// Monte-Carlo p-value against the uniform null: draws bootstrap_count
/// uniform samples of size n and returns (1 + #{null dip >= observed}) / (B + 1).
/// Deterministic in (sample, bootstrap_count, seed).
/// Throws TooFewPoints (n < 4) or BadBootstrapCount (B < 100).
[[nodiscard]] DipResult dip_pvalue(const ScoreSample& sample, std::uint32_t bootstrap_count,
                                   std::uint64_t seed);

}  // namespace polar
