#include "polar/dip.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "polar/error.hpp"

namespace polar {

// Port of the Hartigan & Hartigan (1985, AS 217) cycling algorithm. Indices
// are 1-based to stay close to the published routine; all distances are kept
// in count units (n * ECDF) and the result is scaled by 1/(2n) at the end.
double dip_of_sorted(std::span<const double> sorted) {
  const int n = static_cast<int>(sorted.size());
  if (n == 0) return 0.0;

  std::vector<double> x(n + 1);
  std::copy(sorted.begin(), sorted.end(), x.begin() + 1);

  double dip = 1.0;
  if (n < 2 || x[n] == x[1]) return dip / (2.0 * n);

  std::vector<int> mn(n + 1), mj(n + 1), gcm(n + 1), lcm(n + 1);

  // Predecessor links for the greatest convex minorant.
  mn[1] = 1;
  for (int j = 2; j <= n; ++j) {
    mn[j] = j - 1;
    while (true) {
      const int mnj = mn[j];
      const int mnmnj = mn[mnj];
      if (mnj == 1 ||
          (x[j] - x[mnj]) * (mnj - mnmnj) < (x[mnj] - x[mnmnj]) * (j - mnj)) {
        break;
      }
      mn[j] = mnmnj;
    }
  }

  // Successor links for the least concave majorant.
  mj[n] = n;
  for (int k = n - 1; k >= 1; --k) {
    mj[k] = k + 1;
    while (true) {
      const int mjk = mj[k];
      const int mjmjk = mj[mjk];
      if (mjk == n ||
          (x[k] - x[mjk]) * (mjk - mjmjk) < (x[mjk] - x[mjmjk]) * (k - mjk)) {
        break;
      }
      mj[k] = mjmjk;
    }
  }

  int low = 1;
  int high = n;
  while (true) {
    // GCM change points from high down to low.
    gcm[1] = high;
    int i = 1;
    while (gcm[i] > low) {
      gcm[i + 1] = mn[gcm[i]];
      ++i;
    }
    const int l_gcm = i;
    int ig = l_gcm;
    int ix = ig - 1;

    // LCM change points from low up to high.
    lcm[1] = low;
    i = 1;
    while (lcm[i] < high) {
      lcm[i + 1] = mj[lcm[i]];
      ++i;
    }
    const int l_lcm = i;
    int ih = l_lcm;
    int iv = 2;

    // Largest vertical gap between GCM and LCM on [low, high].
    long double d = 0.0L;
    if (l_gcm != 2 || l_lcm != 2) {
      do {
        const int gcmix = gcm[ix];
        const int lcmiv = lcm[iv];
        if (gcmix > lcmiv) {
          const int gcmi1 = gcm[ix + 1];
          const long double dx =
              (lcmiv - gcmi1 + 1) - (static_cast<long double>(x[lcmiv]) - x[gcmi1]) *
                                        (gcmix - gcmi1) / (x[gcmix] - x[gcmi1]);
          ++iv;
          if (dx >= d) {
            d = dx;
            ig = ix + 1;
            ih = iv - 1;
          }
        } else {
          const int lcmiv1 = lcm[iv - 1];
          const long double dx = (static_cast<long double>(x[gcmix]) - x[lcmiv1]) *
                                     (lcmiv - lcmiv1) / (x[lcmiv] - x[lcmiv1]) -
                                 (gcmix - lcmiv1 - 1);
          --ix;
          if (dx >= d) {
            d = dx;
            ig = ix + 1;
            ih = iv;
          }
        }
        ix = std::max(ix, 1);
        iv = std::min(iv, l_lcm);
      } while (gcm[ix] != lcm[iv]);
    } else {
      d = 1.0L;
    }

    if (d < dip) break;

    // Dip contributions outside the new modal interval.
    double dip_l = 0.0;
    for (int j = ig; j < l_gcm; ++j) {
      double max_t = 1.0;
      const int jk = gcm[j];
      const int jk1 = gcm[j + 1];
      if (jk - jk1 > 1 && x[jk] != x[jk1]) {
        const double t_slope = (x[jk] - x[jk1]) / (jk - jk1);
        for (int jb = jk1; jb <= jk; ++jb) {
          const double t = jb - jk1 + 1 - (x[jb] - x[jk1]) / t_slope;
          max_t = std::max(max_t, t);
        }
      }
      dip_l = std::max(dip_l, max_t);
    }

    double dip_u = 0.0;
    for (int j = ih; j < l_lcm; ++j) {
      double max_t = 1.0;
      const int jk = lcm[j];
      const int jk1 = lcm[j + 1];
      if (jk1 - jk > 1 && x[jk1] != x[jk]) {
        const double t_slope = (x[jk1] - x[jk]) / (jk1 - jk);
        for (int jb = jk; jb <= jk1; ++jb) {
          const double t = (x[jb] - x[jk]) / t_slope - (jb - jk - 1);
          max_t = std::max(max_t, t);
        }
      }
      dip_u = std::max(dip_u, max_t);
    }

    dip = std::max(dip, std::max(dip_l, dip_u));

    // Without this check the cycle can fail to terminate.
    if (low == gcm[ig] && high == lcm[ih]) break;
    low = gcm[ig];
    high = lcm[ih];
  }

  return dip / (2.0 * n);
}

double dip_statistic(const ScoreSample& sample) {
  if (sample.size() < 4) {
    throw Error(ErrorCode::TooFewPoints, "too few points (need ≥ 4)");
  }
  return dip_of_sorted(sample.scores());
}

DipResult dip_pvalue(const ScoreSample& sample, std::uint32_t bootstrap_count,
                     std::uint64_t seed) {
  if (bootstrap_count < 100) {
    throw Error(ErrorCode::BadBootstrapCount,
                "bootstrap count must be at least 100, got " + std::to_string(bootstrap_count));
  }
  const double observed = dip_statistic(sample);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> draw(sample.size());
  std::uint32_t at_least = 0;
  for (std::uint32_t b = 0; b < bootstrap_count; ++b) {
    for (double& v : draw) v = unif(rng);
    std::sort(draw.begin(), draw.end());
    if (dip_of_sorted(draw) >= observed) ++at_least;
  }

  DipResult out;
  out.statistic = observed;
  out.bootstrap_count = bootstrap_count;
  out.pvalue = (1.0 + at_least) / (bootstrap_count + 1.0);
  return out;
}

}  // namespace polar
