#include <doctest.h>

#include <cmath>
#include <numeric>

#include "polar/error.hpp"
#include "polar/measures.hpp"
#include "polar/synth.hpp"

using namespace polar;

namespace {

double mean(const ScoreSample& s) {
  return std::accumulate(s.scores().begin(), s.scores().end(), 0.0) / static_cast<double>(s.size());
}

}  // namespace

TEST_SUITE("synthgen") {

TEST_CASE("truncated gaussian") {
  const auto a = gen_truncated_gaussian(0.0, 0.3, 10000, 1);
  CHECK(std::abs(mean(a)) < 0.02);
  CHECK(a.min() >= -1.0);
  CHECK(a.max() <= 1.0);

  const auto narrow = gen_truncated_gaussian(0.0, 1e-9, 5, 2);
  for (double v : narrow.scores()) CHECK(std::abs(v) < 1e-7);

  const auto clipped = gen_truncated_gaussian(5.0, 0.1, 100, 3);
  for (double v : clipped.scores()) CHECK(v == 1.0);

  CHECK_THROWS_AS((void)gen_truncated_gaussian(0.0, 0.0, 10, 1), Error);
  CHECK_THROWS_AS((void)gen_truncated_gaussian(0.0, 1.0, 0, 1), Error);
}

TEST_CASE("exponential decay is monotone on [-1, 0]") {
  const auto b = gen_exponential_decay(10000, 2.5);
  CHECK(b.size() == 10000);
  CHECK(b.min() == -1.0);
  CHECK(b.max() == 0.0);
  // replication counts never grow along the grid
  std::vector<std::size_t> runs;
  for (std::size_t i = 0; i < b.size();) {
    std::size_t j = i;
    while (j < b.size() && b[j] == b[i]) ++j;
    runs.push_back(j - i);
    i = j;
  }
  CHECK(std::is_sorted(runs.rbegin(), runs.rend()));
  // equal-width bins whose grid populations are balanced stay monotone
  for (std::size_t k : {2u, 4u, 5u, 8u, 10u}) {
    std::vector<std::size_t> counts(k);
    for (double v : b.scores()) counts[std::min(k - 1, static_cast<std::size_t>(std::floor((v + 1.0) * k)))]++;
    CHECK(std::is_sorted(counts.rbegin(), counts.rend()));
  }
  CHECK(dfu(bin_sample(b, 8)) == 0.0);
  CHECK(gen_exponential_decay(10000, 2.5) == b);
}

TEST_CASE("exponential decay flattens as the rate goes to zero") {
  const auto flat = gen_exponential_decay(10000, 1e-9);
  std::vector<std::size_t> counts(10);
  for (double v : flat.scores()) counts[std::min<std::size_t>(9, static_cast<std::size_t>(std::floor((v + 1.0) * 10)))]++;
  for (auto c : counts) CHECK(std::abs(static_cast<double>(c) - 1000.0) <= 10.0);
  CHECK_THROWS_AS((void)gen_exponential_decay(1, 2.5), Error);
  CHECK_THROWS_AS((void)gen_exponential_decay(10, 0.0), Error);
}

TEST_CASE("mixture") {
  MixtureSpec spec{-0.5, 0.5, 1.0, 1.0, 0.5, 10000, 4};
  const auto e = gen_mixture(spec);
  CHECK(std::abs(mean(e)) < 0.03);
  CHECK(e.min() >= -1.0);
  CHECK(e.max() <= 1.0);

  // p = 0 never picks component 1
  const auto only_second = gen_mixture({-0.9, 0.4, 1e-9, 1e-9, 0.0, 200, 5});
  for (double v : only_second.scores()) CHECK(v == doctest::Approx(0.4));
  const auto only_first = gen_mixture({-0.9, 0.4, 1e-9, 1e-9, 1.0, 200, 5});
  for (double v : only_first.scores()) CHECK(v == doctest::Approx(-0.9));

  CHECK_THROWS_AS((void)gen_mixture({0, 0, 1, 1, 1.5, 10, 1}), Error);
  CHECK_THROWS_AS((void)gen_mixture({0, 0, -1, 1, 0.5, 10, 1}), Error);
}

TEST_CASE("panels") {
  CHECK(gen_panel(Panel::D, 3000, 9) == gen_panel(Panel::C, 3000, 9).negated());
  CHECK(gen_panel(Panel::F, 500, 2) == gen_panel(Panel::F, 500, 2));
  CHECK_FALSE(gen_panel(Panel::F, 500, 2) == gen_panel(Panel::F, 500, 3));

  const auto c = panel_mixture(Panel::C, 10, 1);
  CHECK(c.mu1 == -0.5);
  CHECK(c.mu2 == 0.5);
  CHECK(c.p == 0.25);
  const auto f = panel_mixture(Panel::F, 10, 1);
  CHECK(f.mu1 == -0.75);
  CHECK(f.p == 0.5);
  CHECK_THROWS_AS((void)panel_mixture(Panel::A, 10, 1), Error);

  CHECK(parse_panel("e") == Panel::E);
  CHECK(parse_panel("B") == Panel::B);
  CHECK_FALSE(parse_panel("G"));
  CHECK_FALSE(parse_panel("AB"));
  CHECK(panel_name(Panel::D) == 'D');

  for (auto p : {Panel::A, Panel::B, Panel::C, Panel::D, Panel::E, Panel::F}) {
    const auto s = gen_panel(p, 1000, 1);
    CHECK(s.min() >= -1.0);
    CHECK(s.max() <= 1.0);
  }
  CHECK(full_report(gen_panel(Panel::A, 10000, 1), {}).dfu_raw == 0.0);
}

}  // TEST_SUITE
