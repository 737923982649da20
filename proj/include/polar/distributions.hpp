#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace polar {

/// Sorted collection of leaning scores, each in [-1, +1].
///
/// Construction validates and sorts, so two samples holding the same
/// multiset of scores compare equal regardless of input order.
class ScoreSample {
 public:
  [[nodiscard]] std::span<const double> scores() const noexcept { return scores_; }
  [[nodiscard]] std::size_t size() const noexcept { return scores_.size(); }
  [[nodiscard]] double min() const noexcept { return scores_.front(); }
  [[nodiscard]] double max() const noexcept { return scores_.back(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return scores_[i]; }

  /// Elementwise sign flip; the result is re-sorted.
  [[nodiscard]] ScoreSample negated() const;

  friend bool operator==(const ScoreSample&, const ScoreSample&) = default;

 private:
  friend ScoreSample make_sample(std::vector<double> values);
  explicit ScoreSample(std::vector<double> sorted) : scores_(std::move(sorted)) {}

  std::vector<double> scores_;
};

/// Validates and sorts. Throws EmptyInput, or OutOfRange naming the first
/// offending value (in input order).
[[nodiscard]] ScoreSample make_sample(std::vector<double> values);
[[nodiscard]] ScoreSample make_sample(std::span<const double> values);

/// K equal-width bins over [-1, +1]. Bin i covers [edges[i], edges[i+1]),
/// the last bin is closed at +1.
struct OrdinalHistogram {
  std::vector<std::uint64_t> counts;
  std::vector<double> frequencies;
  std::vector<double> edges;

  [[nodiscard]] std::size_t bins() const noexcept { return counts.size(); }
  [[nodiscard]] std::uint64_t total() const noexcept;

  /// Builds a histogram from raw counts over equal-width bins; used when the
  /// frequency vector is known directly (tests, ordinal survey data).
  [[nodiscard]] static OrdinalHistogram from_counts(std::vector<std::uint64_t> counts);
};

[[nodiscard]] std::size_t bin_index(double score, std::size_t bins) noexcept;

/// Throws BadBinCount for bins < 3.
[[nodiscard]] OrdinalHistogram bin_sample(const ScoreSample& sample, std::size_t bins);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;          // n - 1 denominator
  double skewness_g = 0.0;        // bias-corrected G1
  double excess_kurtosis_k = 0.0; // bias-corrected G2
  std::size_t n = 0;
};

/// Throws TooFewPoints (n < 4) or DegenerateSample (zero variance).
[[nodiscard]] SampleMoments moments(const ScoreSample& sample);

struct Interval {
  double low = 0.0;
  double high = 0.0;

  [[nodiscard]] double length() const noexcept { return high - low; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Number of order statistics an HDI window of this coverage spans:
/// ceil(coverage * n), at least 1.
[[nodiscard]] std::size_t hdi_window(std::size_t n, double coverage);

/// Shortest window [x_(i), x_(i+m-1)] over the sorted sample holding
/// m = hdi_window(n, coverage) points; ties go to the smallest i.
[[nodiscard]] Interval hdi(const ScoreSample& sample, double coverage);

}  // namespace polar
