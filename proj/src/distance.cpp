#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "steindpp/normal.hpp"
#include "steindpp/verify.hpp"

namespace steindpp {

double empirical_wasserstein_to_normal(std::vector<double> samples) {
  const std::size_t count = samples.size();
  if (count < 2) {
    throw std::invalid_argument("empirical_wasserstein_to_normal: need at least 2 samples");
  }
  std::sort(samples.begin(), samples.end());
  const double inv_r = 1.0 / static_cast<double>(count);

  // Left tail: F_R = 0 below the smallest order statistic.
  double total = normal_cdf_antiderivative(samples.front());

  for (std::size_t k = 1; k < count; ++k) {
    const double a = samples[k - 1];
    const double b = samples[k];
    if (!(b > a)) continue;  // tied order statistics span an empty interval
    const double level = k * inv_r;
    const double crossing = normal_quantile(level);
    const double g_ab = normal_cdf_antiderivative(b) - normal_cdf_antiderivative(a);
    if (crossing <= a) {
      total += g_ab - level * (b - a);
    } else if (crossing >= b) {
      total += level * (b - a) - g_ab;
    } else {
      const double g_aq = normal_cdf_antiderivative(crossing) - normal_cdf_antiderivative(a);
      const double g_qb = g_ab - g_aq;
      total += (level * (crossing - a) - g_aq) + (g_qb - level * (b - crossing));
    }
  }

  // Right tail: integral of 1 - Phi equals G(t) - t evaluated at the largest
  // order statistic (the limit at +inf vanishes).
  total += normal_cdf_antiderivative(samples.back()) - samples.back();
  return total;
}

double empirical_kolmogorov_to_normal(std::vector<double> samples) {
  const std::size_t count = samples.size();
  if (count < 2) {
    throw std::invalid_argument("empirical_kolmogorov_to_normal: need at least 2 samples");
  }
  std::sort(samples.begin(), samples.end());
  const double inv_r = 1.0 / static_cast<double>(count);
  double sup = 0.0;
  for (std::size_t k = 1; k <= count; ++k) {
    const double phi = normal_cdf(samples[k - 1]);
    sup = std::max(sup, std::abs(k * inv_r - phi));
    sup = std::max(sup, std::abs((k - 1) * inv_r - phi));
  }
  return sup;
}

}  // namespace steindpp
