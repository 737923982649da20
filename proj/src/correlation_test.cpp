#include <doctest.h>

#include <cmath>

#include "oracles/brute.hpp"
#include "polar/correlation.hpp"
#include "polar/error.hpp"

using namespace polar;

TEST_SUITE("correlation") {

TEST_CASE("average ranks share ties") {
  CHECK(average_ranks(std::vector<double>{10, 20, 20, 5}) == std::vector<double>{2, 3.5, 3.5, 1});
  CHECK(average_ranks(std::vector<double>{}).empty());
}

TEST_CASE("spearman identities") {
  const std::vector<double> x{1, 2, 2, 3, 5};
  std::vector<double> neg;
  for (double v : x) neg.push_back(-v);
  CHECK(spearman(x, x) == doctest::Approx(1.0));
  CHECK(spearman(x, neg) == doctest::Approx(-1.0));
  CHECK(std::isnan(spearman(x, std::vector<double>(5, 1.0))));
  CHECK(std::isnan(spearman(std::vector<double>{1.0}, std::vector<double>{2.0})));
  CHECK_THROWS_AS((void)spearman(x, std::vector<double>{1, 2}), Error);
}

TEST_CASE("spearman matches rank-then-Pearson on every {0,1,2} vector pair up to length 6") {
  std::size_t checked = 0;
  for (std::size_t len = 2; len <= 6; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 3;
    auto decode = [len](std::size_t code) {
      std::vector<double> v(len);
      for (std::size_t i = 0; i < len; ++i, code /= 3) v[i] = static_cast<double>(code % 3);
      return v;
    };
    for (std::size_t a = 0; a < total; ++a) {
      const auto x = decode(a);
      for (std::size_t b = 0; b < total; ++b) {
        const auto y = decode(b);
        const double got = spearman(x, y);
        const auto want = oracle::rank_pearson(x, y);
        if (std::isnan(static_cast<double>(want))) {
          CHECK(std::isnan(got));
        } else if (std::abs(got - static_cast<double>(want)) >= 1e-12) {
          FAIL_CHECK("mismatch at length " << len);
        }
        ++checked;
      }
    }
  }
  CHECK(checked == 81 + 27 * 27 + 81 * 81 + 243 * 243 + 729 * 729);
}

}  // TEST_SUITE
