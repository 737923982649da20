#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace polar {

/// 1-based ranks; tied values share the mean of the ranks they occupy.
[[nodiscard]] std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rho as the Pearson correlation of average ranks. NaN when
/// either input is constant. Throws BadParams on length mismatch.
[[nodiscard]] double spearman(std::span<const double> x, std::span<const double> y);

struct MeasureCorrelation {
  std::string measure;
  double rho = 0.0;
  std::size_t count = 0;  // rows where both the measure and peak_count are present
};

struct CorrelationReport {
  std::vector<MeasureCorrelation> pairs;
  std::size_t rows = 0;
};

}  // namespace polar
