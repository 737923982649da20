#include "polar/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "polar/error.hpp"

namespace polar {

namespace {

constexpr std::size_t kDecayGrid = 1000;

double clip(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

ScoreSample gen_truncated_gaussian(double mu, double sigma, std::size_t n, std::uint64_t seed) {
  if (!(sigma > 0.0) || n == 0 || !std::isfinite(mu)) {
    throw Error(ErrorCode::BadParams, "gaussian needs sigma > 0 and n >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(mu, sigma);
  std::vector<double> values(n);
  for (double& v : values) v = clip(normal(rng));
  return make_sample(std::move(values));
}

ScoreSample gen_exponential_decay(std::size_t n, double decay) {
  if (n < 2 || !(decay > 0.0)) {
    throw Error(ErrorCode::BadParams, "exponential decay needs n >= 2 and decay > 0");
  }
  std::vector<double> position(kDecayGrid), quota(kDecayGrid);
  double total = 0.0;
  for (std::size_t j = 0; j < kDecayGrid; ++j) {
    const double u = static_cast<double>(j) / static_cast<double>(kDecayGrid - 1);
    position[j] = u - 1.0;
    quota[j] = std::exp(-decay * u);
    total += quota[j];
  }

  std::vector<std::size_t> count(kDecayGrid);
  std::size_t assigned = 0;
  for (std::size_t j = 0; j < kDecayGrid; ++j) {
    quota[j] *= static_cast<double>(n) / total;
    count[j] = static_cast<std::size_t>(std::floor(quota[j]));
    assigned += count[j];
  }
  // Largest remainder; ties go to the smaller grid index, which keeps the
  // counts non-increasing.
  std::vector<std::size_t> order(kDecayGrid);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return quota[a] - std::floor(quota[a]) > quota[b] - std::floor(quota[b]);
  });
  for (std::size_t r = 0; assigned < n; ++r, ++assigned) ++count[order[r]];

  std::vector<double> values;
  values.reserve(n);
  for (std::size_t j = 0; j < kDecayGrid; ++j) values.insert(values.end(), count[j], position[j]);
  return make_sample(std::move(values));
}

ScoreSample gen_mixture(const MixtureSpec& spec) {
  if (!(spec.sigma1 > 0.0) || !(spec.sigma2 > 0.0) || !(spec.p >= 0.0 && spec.p <= 1.0) ||
      spec.n == 0) {
    throw Error(ErrorCode::BadParams, "mixture needs sigma > 0, p in [0, 1] and n >= 1");
  }
  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution pick_first(spec.p);
  std::normal_distribution<double> first(spec.mu1, spec.sigma1);
  std::normal_distribution<double> second(spec.mu2, spec.sigma2);
  std::vector<double> values(spec.n);
  for (double& v : values) v = clip(pick_first(rng) ? first(rng) : second(rng));
  return make_sample(std::move(values));
}

std::optional<Panel> parse_panel(std::string_view name) {
  if (name.size() != 1) return std::nullopt;
  switch (name[0]) {
    case 'A': case 'a': return Panel::A;
    case 'B': case 'b': return Panel::B;
    case 'C': case 'c': return Panel::C;
    case 'D': case 'd': return Panel::D;
    case 'E': case 'e': return Panel::E;
    case 'F': case 'f': return Panel::F;
    default: return std::nullopt;
  }
}

char panel_name(Panel panel) { return static_cast<char>('A' + static_cast<int>(panel)); }

MixtureSpec panel_mixture(Panel panel, std::size_t n, std::uint64_t seed) {
  switch (panel) {
    case Panel::C: return {-0.5, 0.5, 1.0, 1.0, 0.25, n, seed};
    case Panel::E: return {-0.5, 0.5, 1.0, 1.0, 0.5, n, seed};
    case Panel::F: return {-0.75, 0.75, 1.0, 1.0, 0.5, n, seed};
    default: break;
  }
  throw Error(ErrorCode::BadParams, std::string("panel ") + panel_name(panel) + " is not a mixture");
}

ScoreSample gen_panel(Panel panel, std::size_t n, std::uint64_t seed) {
  switch (panel) {
    case Panel::A: return gen_truncated_gaussian(0.0, 0.3, n, seed);
    case Panel::B: return gen_exponential_decay(n, 2.5);
    case Panel::C:
    case Panel::E:
    case Panel::F: return gen_mixture(panel_mixture(panel, n, seed));
    case Panel::D: return gen_mixture(panel_mixture(Panel::C, n, seed)).negated();
  }
  throw Error(ErrorCode::BadParams, "unknown panel");
}

}  // namespace polar
