#include "polar/bursts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "polar/error.hpp"

namespace polar {

namespace {

constexpr int kMaxLevels = 64;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::BadParams, std::string("invalid burst parameter: ") + what);
}

// One spreading pass over a sorted sequence; returns true if anything moved.
template <typename T, typename Step>
bool spread_duplicates(std::vector<T>& values, Step step) {
  bool moved = false;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    for (std::size_t r = i + 1; r < j; ++r) {
      values[r] = step(values[r], r - i);
      moved = true;
    }
    i = j;
  }
  return moved;
}

template <typename T, typename Step>
void dedup_until_increasing(std::vector<T>& values, int max_passes, Step step) {
  for (int pass = 0; pass < max_passes; ++pass) {
    std::sort(values.begin(), values.end());
    if (!spread_duplicates(values, step)) return;
  }
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw Error(ErrorCode::DedupFailure, "duplicate scores remain after " + std::to_string(max_passes) +
                                             " dedup passes (raise --dedup-passes)");
  }
}

}  // namespace

void BurstParams::validate() const {
  require(s > 1.0, "s must be > 1");
  require(gamma > 0.0, "gamma must be > 0");
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  require(k > 0.0 && k < 1.0, "k must lie in (0, 1)");
  require(epsilon > 0.0, "epsilon must be > 0");
  require(rounding_decimals >= 0 && rounding_decimals <= 12, "rounding decimals must lie in [0, 12]");
  require(peak_level >= 2, "peak level must be >= 2");
  require(max_dedup_passes >= 1, "dedup passes must be >= 1");
}

std::vector<double> deduplicate_scores(const ScoreSample& sample, const BurstParams& params) {
  if (sample.size() < 2) {
    throw Error(ErrorCode::TooFewEvents, "burst detection needs at least 2 events");
  }
  const double scale = std::pow(10.0, params.rounding_decimals);
  const double units_per_step = 1.0 / (scale * params.epsilon);

  // When the rounding grid is a multiple of epsilon, work in integer
  // multiples of epsilon so repeated additions cannot drift.
  if (std::abs(units_per_step - std::round(units_per_step)) < 1e-9 && units_per_step >= 1.0) {
    const auto ratio = static_cast<std::int64_t>(std::llround(units_per_step));
    std::vector<std::int64_t> units;
    units.reserve(sample.size());
    for (double v : sample.scores()) units.push_back(std::llround(v * scale) * ratio);
    dedup_until_increasing(units, params.max_dedup_passes, [](std::int64_t v, std::size_t j) {
      return v + static_cast<std::int64_t>(j);
    });
    // Divide by an exact integer when 1/epsilon is one, so 5001 units of
    // 1e-4 print as 0.5001.
    const double inverse = 1.0 / params.epsilon;
    const bool exact = std::abs(inverse - std::round(inverse)) < 1e-9;
    std::vector<double> out;
    out.reserve(units.size());
    for (auto u : units) {
      out.push_back(exact ? static_cast<double>(u) / std::round(inverse) : static_cast<double>(u) * params.epsilon);
    }
    return out;
  }

  std::vector<double> values;
  values.reserve(sample.size());
  for (double v : sample.scores()) values.push_back(std::round(v * scale) / scale);
  const double eps = params.epsilon;
  dedup_until_increasing(values, params.max_dedup_passes, [eps](double v, std::size_t j) {
    return v + static_cast<double>(j) * eps;
  });
  return values;
}

int level_count(double span, double min_gap, double s) {
  if (!(span > 0.0) || !(min_gap > 0.0)) return 1;
  const double levels = std::ceil(1.0 + std::log(span / min_gap) / std::log(s));
  return static_cast<int>(std::clamp(levels, 1.0, static_cast<double>(kMaxLevels)));
}

std::vector<int> burst_levels(std::span<const double> t, const BurstParams& params) {
  const std::size_t n = t.size();
  if (n < 2) {
    throw Error(ErrorCode::TooFewEvents, "burst detection needs at least 2 events");
  }
  const std::size_t gaps = n - 1;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gaps; ++i) {
    const double g = t[i + 1] - t[i];
    if (!(g > 0.0)) {
      throw Error(ErrorCode::BadParams, "event positions must be strictly increasing");
    }
    min_gap = std::min(min_gap, g);
  }
  const double span = t[n - 1] - t[0];
  const double base_gap = span / static_cast<double>(gaps);
  const int levels = level_count(span, min_gap, params.s);

  std::vector<double> rate(levels), log_rate(levels);
  for (int q = 0; q < levels; ++q) {
    rate[q] = std::pow(params.s, q) / base_gap;
    log_rate[q] = std::log(rate[q]);
  }
  const double up_cost = params.gamma * std::log(static_cast<double>(n));
  constexpr double inf = std::numeric_limits<double>::infinity();

  // Viterbi over levels; the automaton starts at the baseline.
  std::vector<double> cost(levels, inf), next(levels);
  cost[0] = 0.0;
  std::vector<std::uint8_t> back(gaps * static_cast<std::size_t>(levels));
  for (std::size_t g = 0; g < gaps; ++g) {
    const double x = t[g + 1] - t[g];
    for (int q = 0; q < levels; ++q) {
      double best = inf;
      int arg = 0;
      for (int p = 0; p < levels; ++p) {
        const double c = cost[p] + (q > p ? (q - p) * up_cost : 0.0);
        if (c < best) {
          best = c;
          arg = p;
        }
      }
      next[q] = best + rate[q] * x - log_rate[q];
      back[g * levels + q] = static_cast<std::uint8_t>(arg);
    }
    cost.swap(next);
  }

  int state = static_cast<int>(std::min_element(cost.begin(), cost.end()) - cost.begin());
  std::vector<int> out(gaps);
  for (std::size_t g = gaps; g-- > 0;) {
    out[g] = state + 1;
    state = back[g * levels + state];
  }
  return out;
}

std::vector<BurstSpan> detect_bursts(std::span<const double> timestamps, const BurstParams& params) {
  const auto levels = burst_levels(timestamps, params);
  const int top = *std::max_element(levels.begin(), levels.end());

  std::vector<BurstSpan> spans;
  for (int level = 1; level <= top; ++level) {
    std::size_t g = 0;
    while (g < levels.size()) {
      if (levels[g] < level) {
        ++g;
        continue;
      }
      std::size_t end = g;
      while (end + 1 < levels.size() && levels[end + 1] >= level) ++end;
      spans.push_back({level, timestamps[g], timestamps[end + 1]});
      g = end + 1;
    }
  }
  return spans;
}

BurstAnalysis aggregate_bursts(std::vector<BurstSpan> spans, double phi, const BurstParams& params) {
  std::sort(spans.begin(), spans.end(), [](const BurstSpan& a, const BurstSpan& b) {
    return a.level != b.level ? a.level < b.level : a.start < b.start;
  });

  // Transitive left-to-right merge within each level.
  std::vector<BurstSpan> merged;
  for (const auto& span : spans) {
    if (!merged.empty() && merged.back().level == span.level &&
        span.start - merged.back().end < phi) {
      merged.back().end = std::max(merged.back().end, span.end);
    } else {
      merged.push_back(span);
    }
  }

  // A span holding a higher-level span describes the same peak; keep the
  // higher one only.
  BurstAnalysis out;
  out.phi = phi;
  for (const auto& lower : merged) {
    const bool covers_higher = std::any_of(merged.begin(), merged.end(), [&](const BurstSpan& upper) {
      return upper.level > lower.level && upper.start >= lower.start && upper.end <= lower.end;
    });
    if (!covers_higher) out.spans.push_back(lower);
  }
  out.peak_count = static_cast<std::size_t>(
      std::count_if(out.spans.begin(), out.spans.end(),
                    [&](const BurstSpan& s) { return s.level >= params.peak_level; }));
  return out;
}

BurstAnalysis aggregate_bursts(std::vector<BurstSpan> spans, const ScoreSample& sample,
                               const BurstParams& params) {
  const double phi = params.k * hdi(sample, params.alpha).length();
  return aggregate_bursts(std::move(spans), phi, params);
}

BurstAnalysis count_modes(const ScoreSample& sample, const BurstParams& params) {
  params.validate();
  if (sample.size() < params.min_users || sample.size() < 2) {
    BurstAnalysis skipped;
    skipped.skipped = "min_users";
    return skipped;
  }
  const auto timestamps = deduplicate_scores(sample, params);
  return aggregate_bursts(detect_bursts(timestamps, params), sample, params);
}

}  // namespace polar
