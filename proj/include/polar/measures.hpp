#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "polar/distributions.hpp"

namespace polar {

/// Bimodality coefficient from bias-corrected skewness and excess kurtosis.
/// Values above ~0.55 (the uniform benchmark) suggest bi/multimodality; the
/// function itself does not classify.
[[nodiscard]] double bimodality_coefficient(const SampleMoments& m);

/// Distance from unimodality in [0, 0.5]: the largest rise in frequency met
/// while walking away from the mode. With tied modes, the smallest value over
/// all argmax positions. Throws EmptyHistogram.
[[nodiscard]] double dfu(const OrdinalHistogram& hist);

/// Unimodal (1,1,0)/(0,1,1) and deviating (1,0,1) position triples of a 0/1
/// occupancy pattern.
struct TripleCounts {
  std::uint64_t unimodal = 0;
  std::uint64_t deviating = 0;
};

[[nodiscard]] TripleCounts count_triples(std::span<const std::uint8_t> pattern);

/// Unimodality U of a 0/1 pattern; 1 when the pattern has no countable triples.
[[nodiscard]] double pattern_unimodality(std::span<const std::uint8_t> pattern);

/// Agreement of a single 0/1 layer: U * (1 - (S-1)/(K-1)).
[[nodiscard]] double pattern_agreement(std::span<const std::uint8_t> pattern);

/// Van der Eijk's agreement A in [-1, +1]. The histogram is peeled into
/// layers by repeatedly subtracting the smallest remaining non-zero count
/// from every occupied category; each layer's agreement is weighted by its
/// share of the total mass. Throws EmptyHistogram.
[[nodiscard]] double van_der_eijk_a(const OrdinalHistogram& hist);

/// min(c1, c2) / max(c1, c2) with c1 = #{s < 0}, c2 = #{s > 0}. Exact zeros
/// belong to neither side. Throws AllZeroScores.
[[nodiscard]] double balance(const ScoreSample& sample);

/// All five measures for one sample. A measure whose preconditions fail is
/// left empty and its reason recorded in `absent`.
struct MeasureReport {
  std::size_t n = 0;
  std::size_t bins = 8;
  std::optional<double> bc;
  std::optional<double> dip_stat;
  std::optional<double> dip_pvalue;
  std::optional<double> dfu_raw;
  std::optional<double> dfu_display;
  std::optional<double> a_raw;
  std::optional<double> a_display;
  std::optional<double> balance;
  std::map<std::string, std::string> absent;
};

struct ReportOptions {
  std::size_t bins = 8;
  std::uint32_t bootstrap = 0;  // 0 disables the dip p-value
  std::uint64_t seed = 0;
};

/// Throws TooFewPoints when n < 4 and BadBinCount for bins < 3; every other
/// failure is recorded per measure.
[[nodiscard]] MeasureReport full_report(const ScoreSample& sample, const ReportOptions& options);

}  // namespace polar
