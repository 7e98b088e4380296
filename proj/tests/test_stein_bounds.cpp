#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracle_bounds.hpp"
#include "steindpp/rng.hpp"
#include "steindpp/stein_bounds.hpp"

using namespace steindpp;

namespace {
double rel_err(double got, long double expected) {
  const double e = static_cast<double>(expected);
  return std::abs(got - e) / std::max(1e-300, std::abs(e));
}
}  // namespace

TEST_CASE("mu_nu at lambda = 3") {
  const auto mn = mu_nu(3.0);
  const double e = std::exp(1.0);
  CHECK(mn.mu == doctest::Approx(e * e / ((e - 1) * (e - 1))).epsilon(1e-14));
  CHECK(mn.nu == doctest::Approx(e * e * e / ((e - 1) * (e - 1))).epsilon(1e-14));
  CHECK(mn.mu == doctest::Approx(2.5026503010771187).epsilon(1e-12));
  CHECK(mn.nu == doctest::Approx(6.8029088364054904).epsilon(1e-12));
}

TEST_CASE("mu tends to 1 for large lambda and nu/mu = e^{lambda/3}") {
  const auto mn = mu_nu(30.0);
  CHECK(mn.mu > 1.0);
  CHECK(mn.mu < 1.001);
  for (double lambda : {0.5, 1.0, 3.0, 7.0}) {
    const auto v = mu_nu(lambda);
    CHECK(v.nu / v.mu == doctest::Approx(std::exp(lambda / 3.0)).epsilon(1e-13));
  }
}

TEST_CASE("theta at d=1 reduces to the 4*mu form (nu cancels)") {
  const double lambda = 3.0;
  const auto mn = mu_nu(lambda);
  // (4 mu + 2 nu)^1 - (2 nu)^1 = 4 mu.
  const double expected =
      std::pow(std::sqrt(2.0) * 4.0 * mn.mu / (324.0 * std::sqrt(M_PI)), 1.0 / 3.0);
  CHECK(exponential_rate(1, 1.0, 1.0, 1.0, lambda) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("theta power laws in M and gamma") {
  const double base = exponential_rate(2, 1.0, 0.7, 1.3, 1.0);
  const double c = 3.7;
  CHECK(exponential_rate(2, c * 1.0, 0.7, 1.3, 1.0) ==
        doctest::Approx(base * std::pow(c, -1.0 / 5.0)).epsilon(1e-12));
  CHECK(exponential_rate(2, 1.0, 0.7, c * 1.3, 1.0) ==
        doctest::Approx(base * std::pow(c, 1.0 / 10.0)).epsilon(1e-12));
}

TEST_CASE("C3 = 4 at d=1 with unit parameters; kappa power law") {
  const auto c = bound_constants(1, 1.0, 1.0, 1.0, 3.0);
  CHECK(c.c3 == doctest::Approx(4.0).epsilon(1e-14));
  const auto c2x = bound_constants(1, 1.0, 2.0, 1.0, 3.0);
  CHECK(c2x.c3 / c.c3 == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-13));
}

TEST_CASE("constants match the long-double oracle at (d=2, M=2, kappa=0.5, gamma=1, lambda=1)") {
  const int d = 2;
  const double M = 2.0, kappa = 0.5, gamma = 1.0, lambda = 1.0;
  const auto mn = mu_nu(lambda);
  const auto mo = oracle::mu_nu(lambda);
  CHECK(rel_err(mn.mu, mo.mu) <= 1e-10);
  CHECK(rel_err(mn.nu, mo.nu) <= 1e-10);
  CHECK(rel_err(exponential_rate(d, M, kappa, gamma, lambda),
                oracle::theta(d, M, kappa, gamma, lambda)) <= 1e-10);
  const auto c = bound_constants(d, M, kappa, gamma, lambda);
  CHECK(rel_err(c.c1, oracle::c1(d, M, gamma, lambda)) <= 1e-10);
  CHECK(rel_err(c.c2, oracle::c2(d, M, kappa, gamma, lambda)) <= 1e-10);
  CHECK(rel_err(c.c3, oracle::c3(d, M, kappa, gamma)) <= 1e-10);
}

TEST_CASE("optimal block length: frozen value, monotonicity, growth exponent") {
  // d=1, M=kappa=gamma=1, lambda=3, n=1e6.
  const auto bl = optimal_block_length(1, 1.0, 1.0, 1.0, 3.0, 1e6);
  const long double raw = oracle::block_length_raw(1, 1.0L, 1.0L, 1.0L, 3.0L, 1e6L);
  CHECK(rel_err(bl.l_raw, raw) <= 1e-10);
  CHECK(bl.l == static_cast<int>(std::floor(static_cast<double>(raw))));
  CHECK(bl.optimal);

  int prev = 0;
  for (double n : {10.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
    const auto cur = optimal_block_length(1, 1.0, 1.0, 1.0, 3.0, n);
    CHECK(cur.l >= prev);
    prev = cur.l;
  }

  // Pre-floor value grows like n^{d/(4d+2)}.
  for (int d : {1, 2, 3}) {
    const double l2 = optimal_block_length(d, 1.0, 1.0, 1.0, 3.0, 1e2).l_raw;
    const double l4 = optimal_block_length(d, 1.0, 1.0, 1.0, 3.0, 1e4).l_raw;
    const double slope = (std::log(l4) - std::log(l2)) / (std::log(1e4) - std::log(1e2));
    const double expected = d / (4.0 * d + 2.0);
    CHECK(std::abs(slope - expected) <= 0.05 * expected);
  }

  // Integer output over a wide n range tracks the exponent as well.
  const auto a = optimal_block_length(1, 0.1, 10.0, 100.0, 3.0, 1e4);
  const auto b = optimal_block_length(1, 0.1, 10.0, 100.0, 3.0, 1e8);
  const double islope = std::log(double(b.l) / a.l) / std::log(1e4);
  CHECK(std::abs(islope - 1.0 / 6.0) <= 0.05 * (1.0 / 6.0));

  // Tiny n: floor would be 0, reported as non-optimal l = 1.
  const auto tiny = optimal_block_length(1, 1.0, 1.0, 1.0, 3.0, 2.0);
  CHECK(tiny.l == 1);
  CHECK_FALSE(tiny.optimal);
}

TEST_CASE("wasserstein_bound matches the dual oracle and behaves in n") {
  BoundInputs in;
  in.dim = 1;
  in.third_moment = 1.0;
  in.envelope = DecayEnvelope{1.0, 3.0};
  in.variance_rate = 1.0;
  in.n = 1e4;
  const auto rep = wasserstein_bound(in);
  const auto t = oracle::bound_terms(1, 1.0L, 1.0L, 1.0L, 3.0L, 1e4L);
  CHECK(rel_err(rep.term1, t.term1) <= 1e-10);
  CHECK(rel_err(rep.term2, t.term2) <= 1e-10);
  CHECK(rel_err(rep.term3, t.term3) <= 1e-10);
  CHECK(rel_err(rep.total, t.total) <= 1e-10);
  CHECK(rep.total >= rep.term1);
  CHECK(rep.total == rep.term1 + rep.term2 + rep.term3);

  // term1 strictly decreasing in n.
  double prev1 = std::numeric_limits<double>::max();
  for (double n : {1e3, 2e3, 4e3, 8e3, 1.6e4}) {
    in.n = n;
    const auto r = wasserstein_bound(in);
    CHECK(r.term1 < prev1);
    prev1 = r.term1;
  }

  // Exponential terms eventually beat any power: doubling n at large n more
  // than halves them (term2 is unimodal and only decays for n beyond ~1e6
  // at these parameters).
  double prev2 = std::numeric_limits<double>::max();
  double prev3 = std::numeric_limits<double>::max();
  bool first = true;
  for (double n : {1e9, 2e9, 4e9, 8e9}) {
    in.n = n;
    const auto r = wasserstein_bound(in);
    if (!first) {
      CHECK(r.term2 / prev2 < 0.5);
      CHECK(r.term3 / prev3 < 0.5);
    }
    prev2 = r.term2;
    prev3 = r.term3;
    first = false;
  }
}

TEST_CASE("term1 * n^{d/(4d+2)} is constant in n (equals C1)") {
  for (int d : {1, 2, 3}) {
    BoundInputs in;
    in.dim = d;
    in.third_moment = 1.3;
    in.envelope = DecayEnvelope{0.8, 1.0};
    in.variance_rate = 0.9;
    const double c1 = bound_constants(d, 1.3, 0.8, 0.9, 1.0).c1;
    for (double n : {1e2, 1e3, 1e4, 1e5, 1e6}) {
      in.n = n;
      const auto r = wasserstein_bound(in);
      CHECK(std::abs(r.term1 * std::pow(n, d / (4.0 * d + 2.0)) - c1) <= 1e-12 * c1);
    }
  }
}

TEST_CASE("relaxed_rate thresholds and consistency with the main rate") {
  for (int d : {1, 2, 3}) {
    const auto rr = relaxed_rate(d, static_cast<double>(d));
    CHECK(rr.valid);
    CHECK(rr.exponent == doctest::Approx(d / (4.0 * d + 2.0)).epsilon(1e-15));
  }
  // Boundary s = 6/7 at d=1 is invalid (strict inequality required).
  const auto boundary = relaxed_rate(1, 6.0 / 7.0);
  CHECK_FALSE(boundary.valid);
  const auto r1 = relaxed_rate(1, 1.0);
  CHECK(r1.valid);
  CHECK(r1.exponent == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("rio covariance bound") {
  CHECK(rio_covariance_bound(1e-3, 3.0, 3.0, 2.0, 5.0) ==
        doctest::Approx(0.1 * 10.0).epsilon(1e-12));
  CHECK(rio_covariance_bound(0.0, 3.0, 3.0, 1.0, 1.0) == 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(rio_covariance_bound(0.2, inf, inf, 1.5, 2.0) == doctest::Approx(0.2 * 3.0).epsilon(1e-12));
  // 1/p + 1/q = 1 puts r at infinity: factor alpha^0 = 1.
  CHECK(rio_covariance_bound(0.01, 2.0, 2.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(rio_covariance_bound(0.1, 1.5, 1.5, 1.0, 1.0));
  CHECK_THROWS(rio_covariance_bound(0.3, 3.0, 3.0, 1.0, 1.0));

  // Monotone in alpha and in each norm.
  double prev = -1.0;
  for (double a : {0.0, 0.001, 0.01, 0.1, 0.25}) {
    const double v = rio_covariance_bound(a, 3.0, 3.0, 1.0, 1.0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(rio_covariance_bound(0.1, 3.0, 3.0, 2.0, 1.0) >
        rio_covariance_bound(0.1, 3.0, 3.0, 1.0, 1.0));
}

TEST_CASE("alpha mixing bound") {
  const DecayEnvelope env{1.0, 1.0};
  CHECK(alpha_mixing_bound(1.0, 1.0, 2.0, env) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(alpha_mixing_bound(1.5, 2.0, 0.0, env) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(alpha_mixing_bound(2.0, 1.0, 1.0, env) ==
        doctest::Approx(2.0 * alpha_mixing_bound(1.0, 1.0, 1.0, env)).epsilon(1e-12));
}

TEST_CASE("summation identities vs brute force") {
  CHECK(weighted_geom_sum(3, 2.0) == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(weighted_geom_sum(5, 1.0) == 10.0);  // exact n(n-1)/2 through the fallback
  Rng rng(SeedSpec{5150ull, 0});
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 49);
    double w = rng.uniform(0.1, 5.0);
    if (std::abs(w - 1.0) < 0.02) w = 1.05;
    long double brute = 0.0L;
    for (int k = 1; k <= n - 1; ++k) brute += (n - k) * std::pow((long double)w, k);
    CHECK(rel_err(weighted_geom_sum(n, w), brute) <= 1e-10);

    double v = rng.uniform(0.1, 5.0);
    if (std::abs(v - 1.0) < 0.02) v = 0.95;
    long double brute2 = n;
    for (int a = 1; a <= n - 1; ++a) {
      brute2 += (n - a) * (std::pow((long double)v, a) + std::pow((long double)v, -a));
    }
    CHECK(rel_err(symmetric_geom_sum(n, v), brute2) <= 1e-10);
  }
  // n = 4, v = 0.5 spot value.
  long double direct = 4.0L;
  for (int a = 1; a <= 3; ++a) direct += (4 - a) * (std::pow(0.5L, a) + std::pow(2.0L, a));
  CHECK(rel_err(symmetric_geom_sum(4, 0.5), direct) <= 1e-12);
}

TEST_CASE("kolmogorov from wasserstein") {
  CHECK(kolmogorov_from_wasserstein(0.0) == 0.0);
  CHECK(kolmogorov_from_wasserstein(std::sqrt(M_PI / 2.0) / 4.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  double prev = 0.0;
  for (double w : {0.01, 0.1, 0.5, 1.0}) {
    const double k = kolmogorov_from_wasserstein(w);
    CHECK(k > prev);
    prev = k;
  }
}

TEST_CASE("dual-oracle spot grid (subset of the acceptance grid)") {
  for (int d : {1, 3}) {
    for (double lambda : {0.5, 3.0}) {
      for (double M : {0.5, 2.0}) {
        for (double kg : {0.5, 2.0}) {
          BoundInputs in;
          in.dim = d;
          in.third_moment = M;
          in.envelope = DecayEnvelope{kg, lambda};
          in.variance_rate = kg;
          in.n = 1e4;
          const auto rep = wasserstein_bound(in);
          const auto t = oracle::bound_terms(d, M, kg, kg, lambda, 1e4L);
          CHECK(rel_err(rep.total, t.total) <= 1e-10);
          CHECK(rel_err(rep.theta, oracle::theta(d, M, kg, kg, lambda)) <= 1e-10);
        }
      }
    }
  }
}
