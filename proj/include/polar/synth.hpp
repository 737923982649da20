#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "polar/distributions.hpp"

namespace polar {

/// Two-component Gaussian mixture; a Bernoulli(p) success picks component 1.
struct MixtureSpec {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  double p = 0.5;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

/// n seeded normal draws clipped (not resampled) to [-1, +1].
[[nodiscard]] ScoreSample gen_truncated_gaussian(double mu, double sigma, std::size_t n,
                                                 std::uint64_t seed);

/// Deterministic, monotonically decreasing sample on [-1, 0]: weights
/// exp(-decay * u) over a 1000-point grid (u in [0, 1] mapped to [-1, 0]),
/// apportioned to n points by largest remainder.
[[nodiscard]] ScoreSample gen_exponential_decay(std::size_t n, double decay);

[[nodiscard]] ScoreSample gen_mixture(const MixtureSpec& spec);

enum class Panel { A, B, C, D, E, F };

[[nodiscard]] std::optional<Panel> parse_panel(std::string_view name);
[[nodiscard]] char panel_name(Panel panel);

/// Panel A: N(0, 0.3); B: exponential decay 2.5; C/E/F: mixtures with the
/// reference parameters; D: C negated with the same seed.
[[nodiscard]] ScoreSample gen_panel(Panel panel, std::size_t n, std::uint64_t seed);

/// Mixture parameters behind panels C, E and F.
[[nodiscard]] MixtureSpec panel_mixture(Panel panel, std::size_t n, std::uint64_t seed);

}  // namespace polar
