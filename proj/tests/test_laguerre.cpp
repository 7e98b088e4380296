#include <doctest.h>

#include <cmath>

#include "steindpp/laguerre.hpp"
#include "steindpp/rng.hpp"

using namespace steindpp;

namespace {

// Independent brute-force oracle: direct summation of the defining series
//   L_n^s(x) = sum_{k=0}^n C(n+s, n-k) (-x)^k / k!
// in long double, with the binomial as an exact falling-factorial product.
long double binom_product(long double z, int j) {
  long double prod = 1.0L;
  for (int i = 1; i <= j; ++i) prod *= (z - j + i) / i;
  return prod;
}

long double laguerre_direct_sum(int n, long double s, long double x) {
  long double sum = 0.0L;
  long double pow_term = 1.0L;  // (-x)^k / k!
  for (int k = 0; k <= n; ++k) {
    if (k > 0) pow_term *= -x / k;
    sum += binom_product(n + s, n - k) * pow_term;
  }
  return sum;
}

}  // namespace

TEST_CASE("laguerre degree zero is identically one") {
  CHECK(laguerre(0, 0.5, 1.3) == 1.0);
  CHECK(laguerre(0, -1.7, 100.0) == 1.0);
  CHECK(laguerre(0, 3.0, 0.0) == 1.0);
}

TEST_CASE("laguerre degree one is 1 + s - x") {
  CHECK(laguerre(1, 1.0, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(laguerre(1, 0.25, 0.5) == doctest::Approx(0.75));
}

TEST_CASE("laguerre(5, 0.5, 1.3) matches the direct-sum oracle to 1e-9") {
  const double expected = static_cast<double>(laguerre_direct_sum(5, 0.5L, 1.3L));
  const double got = laguerre(5, 0.5, 1.3);
  CHECK(std::abs(got - expected) <= 1e-9 * std::abs(expected));
}

TEST_CASE("recurrence equals direct summation for n <= 10 on random (s, x)") {
  Rng rng(SeedSpec{20240817ull, 0});
  for (int trial = 0; trial < 100; ++trial) {
    const double s = rng.uniform(-2.0, 5.0);
    const double x = rng.uniform(0.0, 10.0);
    for (int n = 0; n <= 10; ++n) {
      const long double oracle = laguerre_direct_sum(n, s, x);
      const double got = laguerre(n, s, x);
      const double scale = std::max(1.0, static_cast<double>(std::fabs(oracle)));
      CHECK(std::abs(got - static_cast<double>(oracle)) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("binomial_real agrees with the product form on real upper arguments") {
  Rng rng(SeedSpec{99ull, 1});
  for (int trial = 0; trial < 200; ++trial) {
    const double z = rng.uniform(-2.0, 12.0);
    const int j = static_cast<int>(rng.uniform01() * 8);
    const double expected = static_cast<double>(binom_product(z, j));
    const double got = binomial_real(z, j);
    CHECK(std::abs(got - expected) <= 1e-11 * std::max(1.0, std::abs(expected)));
  }
  CHECK(binomial_real(4.0, 2) == doctest::Approx(6.0));
  CHECK(binomial_real(2.0, 1) == doctest::Approx(2.0));
}
