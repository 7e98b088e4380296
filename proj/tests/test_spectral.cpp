#include <doctest.h>

#include <cmath>
#include <vector>

#include "steindpp/kernel.hpp"
#include "steindpp/spectral.hpp"

using namespace steindpp;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Closed-form transforms for m = 2, derived independently from the
// Gaussian-polynomial integral pairs (differentiating the Gaussian transform
// with respect to the decay parameter). With a = 1/(2 alpha^2), c = pi^2 u^2:
//   d=1: C(t) = (2 rho/3)(3/2 - a t^2) e^{-a t^2},
//        phi(u) = A sqrt(pi) e^{-c/a} [a^{-1/2} + c a^{-3/2}]
//   d=2: C(t) = (rho/2)(2 - a t^2) e^{-a t^2},
//        phi(u) = 2 pi A e^{-c/a} [1/(2a) + c/(2a^2)]
//   d=3: C(t) = (2 rho/5)(5/2 - a t^2) e^{-a t^2},
//        phi(u) = A pi^{3/2} e^{-c/a} [a^{-3/2} + c a^{-5/2}]
double m2_oracle(int d, double rho, double alpha, double u) {
  const double a = 1.0 / (2.0 * alpha * alpha);
  const double c = kPi * kPi * u * u;
  switch (d) {
    case 1: {
      const double A = 2.0 * rho / 3.0;
      return A * std::sqrt(kPi) * std::exp(-c / a) *
             (1.0 / std::sqrt(a) + c / std::pow(a, 1.5));
    }
    case 2: {
      const double A = rho / 2.0;
      return 2.0 * kPi * A * std::exp(-c / a) * (0.5 / a + 0.5 * c / (a * a));
    }
    default: {
      const double A = 2.0 * rho / 5.0;
      return A * std::pow(kPi, 1.5) * std::exp(-c / a) *
             (std::pow(a, -1.5) + c * std::pow(a, -2.5));
    }
  }
}

}  // namespace

TEST_CASE("m=1 closed form at zero frequency and at the existence boundary") {
  for (int d : {1, 2, 3}) {
    const double rho = 3.0, alpha = 0.1;
    const LaguerreGaussianSpec spec(1, alpha, rho, d);
    const SpectralDensity phi(spec);
    CHECK(phi.mode() == SpectralDensity::Mode::closed_form);
    CHECK(phi.radial(0.0) ==
          doctest::Approx(rho * std::pow(kPi, 0.5 * d) * std::pow(alpha, d)).epsilon(1e-13));

    const double amax = max_admissible_alpha(1, rho, d);
    const SpectralDensity at_edge(LaguerreGaussianSpec(1, amax, rho, d));
    CHECK(at_edge.radial(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(at_edge.max_value() <= 1.0 + 1e-9);
  }
}

TEST_CASE("density is even: phi(xi) = phi(-xi)") {
  const LaguerreGaussianSpec spec(2, 0.12, 5.0, 2);
  const SpectralDensity phi(spec);
  const std::vector<double> xi = {1.7, -2.3};
  const std::vector<double> neg = {-1.7, 2.3};
  CHECK(phi(xi) == phi(neg));
}

TEST_CASE("strictly admissible alpha gives sup phi < 1") {
  for (int m : {1, 2}) {
    const double rho = 8.0;
    const double amax = max_admissible_alpha(m, rho, 2);
    const SpectralDensity phi(LaguerreGaussianSpec(m, 0.9 * amax, rho, 2));
    CHECK(phi.max_value() < 1.0);
  }
}

TEST_CASE("numeric radial transform matches the m=2 closed forms in d = 1, 2, 3") {
  const double rho = 6.0;
  for (int d : {1, 2, 3}) {
    const double alpha = 0.8 * max_admissible_alpha(2, rho, d);
    const LaguerreGaussianSpec spec(2, alpha, rho, d);
    const SpectralDensity phi(spec);
    CHECK(phi.mode() == SpectralDensity::Mode::numeric_radial);
    const double scale = m2_oracle(d, rho, alpha, 0.0);
    for (double frac : {0.0, 0.1, 0.3, 0.5, 0.8, 1.2, 1.8}) {
      const double u = frac / (kPi * alpha * std::sqrt(2.0)) * 3.0;
      const double expected = m2_oracle(d, rho, alpha, u);
      CHECK(std::abs(phi.radial(u) - expected) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("normalization: integral of phi equals rho within 1e-3") {
  for (int m : {1, 2}) {
    for (int d : {1, 2}) {
      const double rho = 4.0;
      const double alpha = 0.8 * max_admissible_alpha(m, rho, d);
      const SpectralDensity phi(LaguerreGaussianSpec(m, alpha, rho, d));
      CHECK(std::abs(phi.integral() / rho - 1.0) <= 1e-3);
    }
  }
}

TEST_CASE("inadmissible alpha is rejected by the eigenvalue gate") {
  const double rho = 5.0;
  const double amax = max_admissible_alpha(1, rho, 2);
  CHECK_THROWS(SpectralDensity(LaguerreGaussianSpec(1, 1.05 * amax, rho, 2)));
  const double amax2 = max_admissible_alpha(2, rho, 2);
  CHECK_THROWS(SpectralDensity(LaguerreGaussianSpec(2, 1.10 * amax2, rho, 2)));
}

TEST_CASE("density is nonnegative on a frequency sweep") {
  const LaguerreGaussianSpec spec(3, 0.08, 9.0, 2);
  REQUIRE(spec.valid());
  const SpectralDensity phi(spec);
  for (int i = 0; i <= 500; ++i) {
    CHECK(phi.radial(phi.support_radius() * i / 500.0) >= 0.0);
  }
}
