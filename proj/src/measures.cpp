#include "polar/measures.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "polar/dip.hpp"
#include "polar/error.hpp"

namespace polar {

double bimodality_coefficient(const SampleMoments& m) {
  const double n = static_cast<double>(m.n);
  const double correction = 3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
  return (m.skewness_g * m.skewness_g + 1.0) / (m.excess_kurtosis_k + correction);
}

double dfu(const OrdinalHistogram& hist) {
  const auto total = hist.total();
  if (total == 0) {
    throw Error(ErrorCode::EmptyHistogram, "histogram is empty");
  }
  const auto& c = hist.counts;
  const std::size_t k = c.size();
  const auto peak = *std::max_element(c.begin(), c.end());

  // Work in integer counts so that ties and mirrored histograms are exact.
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t m = 0; m < k; ++m) {
    if (c[m] != peak) continue;
    std::int64_t worst = 0;  // d_m = 0
    for (std::size_t i = m + 1; i < k; ++i) {
      worst = std::max(worst, static_cast<std::int64_t>(c[i]) - static_cast<std::int64_t>(c[i - 1]));
    }
    for (std::size_t i = 0; i < m; ++i) {
      worst = std::max(worst, static_cast<std::int64_t>(c[i]) - static_cast<std::int64_t>(c[i + 1]));
    }
    best = std::min(best, worst);
  }
  return static_cast<double>(best) / static_cast<double>(total);
}

TripleCounts count_triples(std::span<const std::uint8_t> pattern) {
  // For each middle position q, combine the occupancy counts on either side:
  //   (1,0,1): q empty, ones left * ones right
  //   (1,1,0): q occupied, ones left * zeros right
  //   (0,1,1): q occupied, zeros left * ones right
  const std::uint64_t k = pattern.size();
  std::uint64_t ones_total = 0;
  for (auto p : pattern) ones_total += p ? 1 : 0;

  TripleCounts out;
  std::uint64_t ones_left = 0;
  for (std::uint64_t q = 0; q < k; ++q) {
    const bool occupied = pattern[q] != 0;
    const std::uint64_t zeros_left = q - ones_left;
    const std::uint64_t ones_right = ones_total - ones_left - (occupied ? 1 : 0);
    const std::uint64_t zeros_right = (k - q - 1) - ones_right;
    if (occupied) {
      out.unimodal += ones_left * zeros_right + zeros_left * ones_right;
      ++ones_left;
    } else {
      out.deviating += ones_left * ones_right;
    }
  }
  return out;
}

double pattern_unimodality(std::span<const std::uint8_t> pattern) {
  const auto t = count_triples(pattern);
  if (t.unimodal + t.deviating == 0) return 1.0;
  const double k = static_cast<double>(pattern.size());
  const double tu = static_cast<double>(t.unimodal);
  const double tdu = static_cast<double>(t.deviating);
  return ((k - 2.0) * tu - (k - 1.0) * tdu) / ((k - 2.0) * (tu + tdu));
}

double pattern_agreement(std::span<const std::uint8_t> pattern) {
  const auto k = static_cast<std::int64_t>(pattern.size());
  std::int64_t s = 0;
  for (auto p : pattern) s += p ? 1 : 0;
  // U * (K - S) / (K - 1) as one fraction, so the anchors come out exact.
  const auto t = count_triples(pattern);
  const auto tu = static_cast<std::int64_t>(t.unimodal);
  const auto tdu = static_cast<std::int64_t>(t.deviating);
  if (tu + tdu == 0) return static_cast<double>(k - s) / static_cast<double>(k - 1);
  __extension__ using wide = __int128;  // triple counts grow like K^3
  const wide num = (wide{k - 2} * tu - wide{k - 1} * tdu) * (k - s);
  const wide den = wide{k - 2} * (tu + tdu) * (k - 1);
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

double van_der_eijk_a(const OrdinalHistogram& hist) {
  if (hist.bins() < 3) {
    throw Error(ErrorCode::BadBinCount, "agreement needs at least 3 categories");
  }
  const auto total = hist.total();
  if (total == 0) {
    throw Error(ErrorCode::EmptyHistogram, "histogram is empty");
  }

  std::vector<std::uint64_t> remaining = hist.counts;
  std::vector<std::uint8_t> pattern(remaining.size());
  double agreement = 0.0;
  while (true) {
    std::uint64_t layer_height = 0;
    std::uint64_t occupied = 0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      pattern[i] = remaining[i] > 0 ? 1 : 0;
      if (remaining[i] > 0) {
        ++occupied;
        if (layer_height == 0 || remaining[i] < layer_height) layer_height = remaining[i];
      }
    }
    if (occupied == 0) break;

    const double weight = static_cast<double>(layer_height * occupied) / static_cast<double>(total);
    agreement += weight * pattern_agreement(pattern);
    for (auto& r : remaining) {
      if (r > 0) r -= layer_height;
    }
  }
  return agreement;
}

double balance(const ScoreSample& sample) {
  std::size_t below = 0;
  std::size_t above = 0;
  for (double s : sample.scores()) {
    if (s < 0.0) ++below;
    else if (s > 0.0) ++above;
  }
  if (below == 0 && above == 0) {
    throw Error(ErrorCode::AllZeroScores, "all scores are exactly zero");
  }
  return static_cast<double>(std::min(below, above)) /
         static_cast<double>(std::max(below, above));
}

namespace {

template <typename Fn>
void try_measure(MeasureReport& report, const char* name, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    report.absent.emplace(name, e.what());
  }
}

}  // namespace

MeasureReport full_report(const ScoreSample& sample, const ReportOptions& options) {
  if (sample.size() < 4) {
    throw Error(ErrorCode::TooFewPoints, "too few points (need ≥ 4)");
  }
  const auto hist = bin_sample(sample, options.bins);

  MeasureReport r;
  r.n = sample.size();
  r.bins = options.bins;

  try_measure(r, "bc", [&] { r.bc = bimodality_coefficient(moments(sample)); });
  try_measure(r, "dip_stat", [&] { r.dip_stat = dip_statistic(sample); });
  if (options.bootstrap > 0) {
    try_measure(r, "dip_pvalue", [&] {
      r.dip_pvalue = dip_pvalue(sample, options.bootstrap, options.seed).pvalue;
    });
  }
  try_measure(r, "dfu", [&] {
    r.dfu_raw = dfu(hist);
    r.dfu_display = 2.0 * *r.dfu_raw;
  });
  try_measure(r, "a", [&] {
    r.a_raw = van_der_eijk_a(hist);
    r.a_display = (1.0 - *r.a_raw) / 2.0;
  });
  try_measure(r, "balance", [&] { r.balance = balance(sample); });
  return r;
}

}  // namespace polar
