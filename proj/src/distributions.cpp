#include "polar/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polar/error.hpp"

namespace polar {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadBinCount: return "BadBinCount";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::BadBootstrapCount: return "BadBootstrapCount";
    case ErrorCode::EmptyHistogram: return "EmptyHistogram";
    case ErrorCode::AllZeroScores: return "AllZeroScores";
    case ErrorCode::DedupFailure: return "DedupFailure";
    case ErrorCode::TooFewEvents: return "TooFewEvents";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

ScoreSample make_sample(std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "empty sample");
  }
  for (double v : values) {
    // NaN fails both comparisons and is rejected here as well.
    if (!(v >= -1.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg << "score out of range [-1, 1]: " << v;
      throw Error(ErrorCode::OutOfRange, msg.str());
    }
  }
  std::sort(values.begin(), values.end());
  return ScoreSample(std::move(values));
}

ScoreSample make_sample(std::span<const double> values) {
  return make_sample(std::vector<double>(values.begin(), values.end()));
}

ScoreSample ScoreSample::negated() const {
  std::vector<double> out(scores_.rbegin(), scores_.rend());
  for (double& v : out) v = -v;
  return ScoreSample(std::move(out));
}

std::uint64_t OrdinalHistogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

std::vector<double> equal_width_edges(std::size_t bins) {
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(bins);
  }
  edges.front() = -1.0;
  edges.back() = 1.0;
  return edges;
}

void check_bins(std::size_t bins) {
  if (bins < 3) {
    throw Error(ErrorCode::BadBinCount,
                "bin count must be at least 3, got " + std::to_string(bins));
  }
}

}  // namespace

OrdinalHistogram OrdinalHistogram::from_counts(std::vector<std::uint64_t> counts) {
  check_bins(counts.size());
  OrdinalHistogram h;
  h.edges = equal_width_edges(counts.size());
  h.counts = std::move(counts);
  const auto total = h.total();
  h.frequencies.assign(h.counts.size(), 0.0);
  if (total > 0) {
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      h.frequencies[i] = static_cast<double>(h.counts[i]) / static_cast<double>(total);
    }
  }
  return h;
}

std::size_t bin_index(double score, std::size_t bins) noexcept {
  const double pos = (score + 1.0) * static_cast<double>(bins) / 2.0;
  if (pos <= 0.0) return 0;
  const auto idx = static_cast<std::size_t>(std::floor(pos));
  return std::min(idx, bins - 1);
}

OrdinalHistogram bin_sample(const ScoreSample& sample, std::size_t bins) {
  check_bins(bins);
  std::vector<std::uint64_t> counts(bins, 0);
  for (double s : sample.scores()) ++counts[bin_index(s, bins)];
  return OrdinalHistogram::from_counts(std::move(counts));
}

SampleMoments moments(const ScoreSample& sample) {
  const std::size_t n = sample.size();
  if (n < 4) {
    throw Error(ErrorCode::TooFewPoints, "too few points (need ≥ 4)");
  }
  if (sample.min() == sample.max()) {
    throw Error(ErrorCode::DegenerateSample, "degenerate sample (zero variance)");
  }
  const auto scores = sample.scores();
  const double nd = static_cast<double>(n);
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / nd;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : scores) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;

  const double g1 = m3 / std::pow(m2, 1.5);
  const double g2 = m4 / (m2 * m2) - 3.0;

  SampleMoments out;
  out.n = n;
  out.mean = mean;
  out.variance = m2 * nd / (nd - 1.0);
  out.skewness_g = g1 * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0);
  out.excess_kurtosis_k = (nd - 1.0) / ((nd - 2.0) * (nd - 3.0)) * ((nd + 1.0) * g2 + 6.0);
  return out;
}

std::size_t hdi_window(std::size_t n, double coverage) {
  // The small slack keeps products like 0.05 * 100 from rounding up to 6.
  const double target = std::ceil(coverage * static_cast<double>(n) - 1e-9);
  const auto m = static_cast<std::size_t>(std::max(1.0, target));
  return std::min(m, n);
}

Interval hdi(const ScoreSample& sample, double coverage) {
  if (!(coverage > 0.0 && coverage < 1.0)) {
    throw Error(ErrorCode::BadParams, "HDI coverage must lie in (0, 1)");
  }
  const std::size_t n = sample.size();
  if (n < 2) {
    throw Error(ErrorCode::TooFewPoints, "HDI needs at least 2 points");
  }
  const std::size_t m = hdi_window(n, coverage);
  const auto x = sample.scores();
  std::size_t best = 0;
  double best_len = x[m - 1] - x[0];
  for (std::size_t i = 1; i + m <= n; ++i) {
    const double len = x[i + m - 1] - x[i];
    if (len < best_len) {
      best_len = len;
      best = i;
    }
  }
  return {x[best], x[best + m - 1]};
}

}  // namespace polar
