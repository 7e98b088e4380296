#include "steindpp/variance_condition.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "steindpp/laguerre.hpp"
#include "steindpp/quadrature.hpp"

namespace steindpp {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Angular factor of the cubic-window covariogram at pair distance u:
//   A_d(u) = Int_{S^{d-1}} prod_q (1 - u |w_q| / n) dw
//          = sum_k C(d,k) (-u/n)^k * 2 pi^{(d-k)/2} / Gamma((d+k)/2),
// valid while u < n so no clamp activates.
double angular_covariogram(int d, double u, double n) {
  double sum = 0.0;
  for (int k = 0; k <= d; ++k) {
    const double moment = 2.0 * std::pow(kPi, 0.5 * (d - k)) / std::tgamma(0.5 * (d + k));
    sum += binomial_real(d, k) * std::pow(-u / n, k) * moment;
  }
  return sum;
}

// Window average (1/n^d) Int_{[0,n]^d} g({x}) dx by tensor Gauss-Legendre.
double singleton_window_average(const LocalStatistic& stat, int d, double n, int panels) {
  const auto& rule = gauss_legendre(16);
  const double h = n / panels;
  std::vector<double> x(d);
  std::function<double(int)> recurse = [&](int q) -> double {
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = p * h;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        x[q] = a + 0.5 * h * (1.0 + rule.nodes[i]);
        const double inner = (q + 1 < d) ? recurse(q + 1) : stat(x, d, 1);
        total += 0.5 * h * rule.weights[i] * inner;
      }
    }
    return total;
  };
  return recurse(0) / std::pow(n, d);
}

double pair_radial_estimate(const LaguerreGaussianSpec& spec, const LocalStatistic& stat,
                            double n, int panels) {
  const double r = stat.radius();
  const auto& rule = gauss_legendre(16);
  auto integrand = [&](double u) {
    double g;
    if (stat.kind() == LocalStatistic::Kind::pair_indicator) {
      g = 1.0;
    } else {
      g = std::max(0.0, 1.0 - u / r);
    }
    const double c = kernel_value_radial(spec, u);
    return std::pow(u, spec.dim - 1) * g * (spec.rho * spec.rho - c * c) *
           angular_covariogram(spec.dim, u, n);
  };
  return integrate_composite(integrand, 0.0, r, panels, rule);
}

}  // namespace

VarianceConditionResult sufficient_variance_condition(const LaguerreGaussianSpec& spec,
                                                      const LocalStatistic& stat, int p,
                                                      double n) {
  if (p > 2) {
    throw std::invalid_argument("sufficient_variance_condition: subset size p > 2 out of scope");
  }
  if (p < 1) throw std::invalid_argument("sufficient_variance_condition: p must be >= 1");
  if (!(n >= 1.0)) throw std::invalid_argument("sufficient_variance_condition: n must be >= 1");
  if (!spec.strictly_valid()) {
    throw std::runtime_error(
        "sufficient_variance_condition: kernel must be strictly valid (alpha " +
        std::to_string(spec.alpha) + " not below the admissible maximum " +
        std::to_string(spec.alpha_max()) + ")");
  }

  VarianceConditionResult res;
  if (p == 1) {
    if (stat.kind() == LocalStatistic::Kind::pair_indicator ||
        stat.kind() == LocalStatistic::Kind::pair_weight) {
      throw std::invalid_argument(
          "sufficient_variance_condition: pair statistic has no singleton support (p mismatch)");
    }
    const double coarse = singleton_window_average(stat, spec.dim, n, 8);
    const double fine = singleton_window_average(stat, spec.dim, n, 16);
    res.lower_estimate = spec.rho * fine;
    res.quadrature_error = spec.rho * std::abs(fine - coarse) + 1e-14 * spec.rho;
  } else {
    if (stat.kind() == LocalStatistic::Kind::count) {
      throw std::invalid_argument(
          "sufficient_variance_condition: count statistic has no pair support (p mismatch)");
    }
    if (stat.kind() == LocalStatistic::Kind::custom) {
      throw std::invalid_argument(
          "sufficient_variance_condition: pair quadrature supports the registered radial pair "
          "statistics only");
    }
    if (!(stat.radius() < 0.5 * n)) {
      throw std::invalid_argument(
          "sufficient_variance_condition: pair radius must be below half the window side");
    }
    const double coarse = pair_radial_estimate(spec, stat, n, 32);
    const double fine = pair_radial_estimate(spec, stat, n, 64);
    res.lower_estimate = fine;
    res.quadrature_error =
        std::abs(fine - coarse) + 1e-14 * spec.rho * spec.rho * std::pow(stat.radius(), spec.dim);
  }
  res.satisfied = res.lower_estimate > res.quadrature_error;
  return res;
}

}  // namespace steindpp
