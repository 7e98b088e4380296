#include "steindpp/stein_bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace steindpp {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_positive(int d, double m, double kappa, double gamma, double lambda) {
  if (d < 1) throw std::invalid_argument("bound constants: dimension must be >= 1");
  if (!(m > 0.0) || !(kappa > 0.0) || !(gamma > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("bound constants: M, kappa, gamma, lambda must be > 0");
  }
}

// Q_d = (4 mu + 2 nu)^d - (2 nu)^d.
double mixing_volume_factor(int d, double lambda) {
  const MuNu mn = mu_nu(lambda);
  return std::pow(4.0 * mn.mu + 2.0 * mn.nu, d) - std::pow(2.0 * mn.nu, d);
}

}  // namespace

MuNu mu_nu(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("mu_nu: lambda must be > 0");
  const double em1 = std::expm1(lambda / 3.0);  // e^{lambda/3} - 1
  MuNu mn;
  mn.mu = std::exp(2.0 * lambda / 3.0) / (em1 * em1);
  mn.nu = std::exp(lambda) / (em1 * em1);
  return mn;
}

double exponential_rate(int d, double third_moment, double kappa, double gamma, double lambda) {
  check_positive(d, third_moment, kappa, gamma, lambda);
  const double q = mixing_volume_factor(d, lambda);
  const double inner = std::sqrt(2.0 * gamma) * std::cbrt(kappa) * q /
                       (std::pow(18.0, d + 1) * std::sqrt(kPi) * d * third_moment);
  return lambda / 3.0 * std::pow(inner, 1.0 / (2.0 * d + 1.0));
}

SteinConstants bound_constants(int d, double third_moment, double kappa, double gamma,
                               double lambda) {
  check_positive(d, third_moment, kappa, gamma, lambda);
  const double q = mixing_volume_factor(d, lambda);
  const double two_d = 2.0 * d;
  const double inv_exp = 1.0 / (two_d + 1.0);

  SteinConstants c;
  const double c1_core = 9.0 * std::pow(36.0, d) * std::pow(third_moment, 4.0 * d + 3.0) *
                         std::pow(q, two_d) /
                         (std::pow(gamma, two_d + 1.5) * std::pow(kPi, d));
  c.c1 = std::pow(c1_core, inv_exp) *
         (1.0 / std::pow(two_d, two_d * inv_exp) + 2.0 * std::pow(two_d, inv_exp));

  const double theta = exponential_rate(d, third_moment, kappa, gamma, lambda);
  c.c2 = 3.0 * std::pow(6.0, d) * std::cbrt(kappa) * third_moment * third_moment *
         std::pow(theta, 4.0 * d / 3.0) / (std::sqrt(kPi) * gamma);

  c.c3 = std::pow(2.0, d + 1) * std::pow(kappa, 2.0 / 3.0) * third_moment / std::sqrt(gamma);
  return c;
}

BlockLength optimal_block_length(int d, double third_moment, double kappa, double gamma,
                                 double lambda, double n) {
  check_positive(d, third_moment, kappa, gamma, lambda);
  if (!(n >= 1.0)) throw std::invalid_argument("optimal_block_length: n must be >= 1");
  const double q = mixing_volume_factor(d, lambda);
  const double inner = std::sqrt(2.0 * gamma) * std::cbrt(kappa) * q * std::pow(n, 0.5 * d) /
                       (std::pow(18.0, d + 1) * std::sqrt(kPi) * third_moment);
  BlockLength bl;
  bl.l_raw = std::pow(inner, 1.0 / (2.0 * d + 1.0));
  const double fl = std::floor(bl.l_raw);
  if (fl < 1.0) {
    bl.l = 1;
    bl.optimal = false;  // n too small for the optimal choice; reported, not fatal
  } else {
    bl.l = static_cast<int>(fl);
    bl.optimal = true;
  }
  return bl;
}

BoundReport wasserstein_bound(const BoundInputs& in) {
  check_positive(in.dim, in.third_moment, in.envelope.kappa, in.variance_rate,
                 in.envelope.lambda);
  if (!(in.n >= 1.0)) throw std::invalid_argument("wasserstein_bound: n must be >= 1");
  const int d = in.dim;
  const double n = in.n;

  BoundReport rep;
  const MuNu mn = mu_nu(in.envelope.lambda);
  rep.mu = mn.mu;
  rep.nu = mn.nu;
  rep.theta = exponential_rate(d, in.third_moment, in.envelope.kappa, in.variance_rate,
                               in.envelope.lambda);
  const SteinConstants c = bound_constants(d, in.third_moment, in.envelope.kappa,
                                           in.variance_rate, in.envelope.lambda);
  rep.c1 = c.c1;
  rep.c2 = c.c2;
  rep.c3 = c.c3;
  rep.n = n;
  const BlockLength bl = optimal_block_length(d, in.third_moment, in.envelope.kappa,
                                              in.variance_rate, in.envelope.lambda, n);
  rep.l_star = bl.l;
  rep.l_optimal = bl.optimal;

  rep.rate_exponent = d / (4.0 * d + 2.0);
  const double n_rate = std::pow(n, rep.rate_exponent);
  rep.term1 = rep.c1 / n_rate;
  rep.term2 = rep.c2 * std::pow(n, d * (4.0 * d + 1.0) / (6.0 * d + 3.0)) /
              std::exp(rep.theta * n_rate);
  rep.term3 = rep.c3 * std::pow(n, 7.0 * d / 6.0) / std::exp(2.0 * rep.theta * n_rate);
  rep.total = rep.term1 + rep.term2 + rep.term3;
  return rep;
}

RelaxedRate relaxed_rate(int d, double s) {
  if (d < 1) throw std::invalid_argument("relaxed_rate: dimension must be >= 1");
  if (!(s > 0.0)) throw std::invalid_argument("relaxed_rate: s must be > 0");
  RelaxedRate rr;
  rr.valid = s > (4.0 * d + 2.0) * d / (4.0 * d + 3.0);
  rr.exponent = (4.0 * d + 3.0) / (4.0 * d + 2.0) * s - d;
  return rr;
}

double rio_covariance_bound(double alpha, double p, double q, double norm_x, double norm_y) {
  if (!(alpha >= 0.0) || alpha > 0.25) {
    throw std::invalid_argument("rio_covariance_bound: alpha must lie in [0, 1/4]");
  }
  if (!(p >= 1.0) || !(q >= 1.0)) {
    throw std::invalid_argument("rio_covariance_bound: p and q must be >= 1");
  }
  if (!(norm_x >= 0.0) || !(norm_y >= 0.0)) {
    throw std::invalid_argument("rio_covariance_bound: norms must be >= 0");
  }
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  const double ir = 1.0 - ip - iq;
  if (ir < -1e-15) {
    throw std::invalid_argument("rio_covariance_bound: infeasible (p, q), needs 1/p + 1/q <= 1");
  }
  // ir == 0 means r = infinity and the mixing factor is alpha^0 = 1.
  const double factor = (ir <= 0.0) ? 1.0 : std::pow(alpha, ir);
  return factor * norm_x * norm_y;
}

double alpha_mixing_bound(double a, double b, double c, const DecayEnvelope& envelope) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("alpha_mixing_bound: volumes must be > 0");
  }
  if (!(c >= 0.0)) throw std::invalid_argument("alpha_mixing_bound: distance must be >= 0");
  return a * b * envelope.bound(c);
}

double weighted_geom_sum(int n, double w) {
  if (n < 2) throw std::invalid_argument("weighted_geom_sum: n must be >= 2");
  if (std::abs(w - 1.0) <= 1e-8) {
    double sum = 0.0;
    for (int k = 1; k <= n - 1; ++k) sum += (n - k) * std::pow(w, k);
    return sum;
  }
  const double wm1 = w - 1.0;
  return w * ((n - 1.0) - n * w + std::pow(w, n)) / (wm1 * wm1);
}

double symmetric_geom_sum(int n, double v) {
  if (n < 1) throw std::invalid_argument("symmetric_geom_sum: n must be >= 1");
  if (!(v > 0.0)) throw std::invalid_argument("symmetric_geom_sum: v must be > 0");
  if (std::abs(v - 1.0) <= 1e-8) {
    double sum = n;
    for (int a = 1; a <= n - 1; ++a) sum += (n - a) * (std::pow(v, a) + std::pow(v, -a));
    return sum;
  }
  const double vm1 = v - 1.0;
  const double vn = std::pow(v, n);
  return std::pow(v, 1.0 - n) * (vn - 1.0) * (vn - 1.0) / (vm1 * vm1);
}

double kolmogorov_from_wasserstein(double w1) {
  if (!(w1 >= 0.0)) throw std::invalid_argument("kolmogorov_from_wasserstein: w1 must be >= 0");
  const double c = 1.0 / std::sqrt(2.0 * kPi);
  return std::sqrt(2.0 * c * w1);
}

}  // namespace steindpp
