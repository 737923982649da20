#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polar/distributions.hpp"

namespace polar {

/// Parameters of the burst-based mode counter. Defaults reproduce the
/// reference configuration (s = 1.7, gamma = 0.9, alpha = 0.05, k = 0.5).
struct BurstParams {
  double s = 1.7;            // rate ratio between consecutive automaton levels
  double gamma = 0.9;        // cost coefficient for moving up one level
  double alpha = 0.05;       // HDI coverage used for the merge distance
  double k = 0.5;            // merge distance as a fraction of the HDI length
  double epsilon = 0.0001;   // step used to separate duplicate scores
  int rounding_decimals = 3;
  int peak_level = 3;
  std::size_t min_users = 50;
  int max_dedup_passes = 100;  // dense samples can need far more

  /// Throws BadParams naming the first violated bound.
  void validate() const;
};

/// Burst of a given level over the closed score interval [start, end].
/// Level 1 is the baseline rate.
struct BurstSpan {
  int level = 1;
  double start = 0.0;
  double end = 0.0;

  friend bool operator==(const BurstSpan&, const BurstSpan&) = default;
};

struct BurstAnalysis {
  std::vector<BurstSpan> spans;
  std::optional<std::size_t> peak_count;
  double phi = 0.0;
  std::optional<std::string> skipped;  // reason, when the sample is too small

  [[nodiscard]] bool is_skipped() const noexcept { return skipped.has_value(); }
};

/// Rounds to params.rounding_decimals, sorts, and spreads every run of equal
/// values by j * epsilon (j = 0, 1, ...) until the sequence is strictly
/// increasing. Throws TooFewEvents for n < 2 and DedupFailure after
/// params.max_dedup_passes passes.
[[nodiscard]] std::vector<double> deduplicate_scores(const ScoreSample& sample,
                                                     const BurstParams& params);

/// Number of automaton levels used for a given span and smallest gap:
/// ceil(1 + log_s(span / min_gap)), clamped to [1, 64].
[[nodiscard]] int level_count(double span, double min_gap, double s);

/// Optimal level per inter-arrival gap of the infinite-state burst automaton
/// (levels are 1-based). Exposed for testing.
[[nodiscard]] std::vector<int> burst_levels(std::span<const double> timestamps,
                                            const BurstParams& params);

/// Runs the automaton on strictly increasing positions and reports, for every
/// level L, each maximal run of gaps at level >= L as [first event, last event].
/// Spans are ordered by level, then start. Throws TooFewEvents.
[[nodiscard]] std::vector<BurstSpan> detect_bursts(std::span<const double> timestamps,
                                                   const BurstParams& params);

/// Merges same-level spans closer than phi = k * |HDI(alpha)|, drops any
/// span containing a span of higher level, and counts the survivors at or
/// above params.peak_level.
[[nodiscard]] BurstAnalysis aggregate_bursts(std::vector<BurstSpan> spans, const ScoreSample& sample,
                                             const BurstParams& params);

/// Same as above with an explicit merge distance.
[[nodiscard]] BurstAnalysis aggregate_bursts(std::vector<BurstSpan> spans, double phi,
                                             const BurstParams& params);

/// Full pipeline: skip below params.min_users, otherwise deduplicate,
/// detect and aggregate.
[[nodiscard]] BurstAnalysis count_modes(const ScoreSample& sample, const BurstParams& params);

}  // namespace polar
