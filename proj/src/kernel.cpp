#include "steindpp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "steindpp/laguerre.hpp"

namespace steindpp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

LaguerreGaussianSpec::LaguerreGaussianSpec(int m_, double alpha_, double rho_, int dim_)
    : m(m_), alpha(alpha_), rho(rho_), dim(dim_) {
  if (m < 1) throw std::invalid_argument("LaguerreGaussianSpec: m must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("LaguerreGaussianSpec: alpha must be > 0");
  if (!(rho > 0.0)) throw std::invalid_argument("LaguerreGaussianSpec: rho must be > 0");
  if (dim < 1) throw std::invalid_argument("LaguerreGaussianSpec: dim must be >= 1");
}

double max_admissible_alpha(int m, double rho, int dim) {
  if (m < 1 || dim < 1 || !(rho > 0.0)) {
    throw std::invalid_argument("max_admissible_alpha: arguments must be positive");
  }
  const double binom = binomial_real(m - 1 + 0.5 * dim, m - 1);
  return std::pow(binom / (rho * std::pow(m * kPi, 0.5 * dim)), 1.0 / dim);
}

double kernel_value_radial(const LaguerreGaussianSpec& spec, double radius) {
  const double u = (radius / spec.alpha) * (radius / spec.alpha) / spec.m;
  const double binom = binomial_real(spec.m - 1 + 0.5 * spec.dim, spec.m - 1);
  return spec.rho / binom * laguerre(spec.m - 1, 0.5 * spec.dim, u) * std::exp(-u);
}

double kernel_value(const LaguerreGaussianSpec& spec, std::span<const double> z) {
  if (static_cast<int>(z.size()) != spec.dim) {
    throw std::invalid_argument("kernel_value: displacement dimension mismatch");
  }
  double r2 = 0.0;
  for (double c : z) r2 += c * c;
  return kernel_value_radial(spec, std::sqrt(r2));
}

double covariance_density(const LaguerreGaussianSpec& spec, std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("covariance_density: point dimension mismatch");
  }
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = x[i] - y[i];
    r2 += c * c;
  }
  const double k = kernel_value_radial(spec, std::sqrt(r2));
  return -k * k;
}

double DecayEnvelope::bound(double r) const { return kappa * std::exp(-lambda * r); }

namespace {

// Objective h(t) = kernel(t)^2 * exp(lambda*t). The envelope constant is
// sup_{r>=0} E(r) e^{lambda r} with E the decreasing majorant of the squared
// kernel, and that supremum equals sup_t h(t) because exp is increasing.
double envelope_objective(const LaguerreGaussianSpec& spec, double lambda, double t) {
  const double k = kernel_value_radial(spec, t);
  return k * k * std::exp(lambda * t);
}

}  // namespace

DecayEnvelope fit_decay_envelope(const LaguerreGaussianSpec& spec, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("fit_decay_envelope: lambda must be > 0");

  // The Gaussian factor exp(-2t^2/(m alpha^2) + lambda t) peaks at
  // t = lambda m alpha^2 / 4; polynomial oscillations stay within a few
  // multiples of alpha sqrt(m) of the origin.
  const double scale = spec.alpha * std::sqrt(static_cast<double>(spec.m));
  double t_hi = std::max(20.0 * spec.alpha, 0.25 * lambda * spec.m * spec.alpha * spec.alpha + 12.0 * scale);

  const int kGrid = 20000;
  int best_i = 0;
  double best = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    best_i = 0;
    best = 0.0;
    for (int i = 0; i <= kGrid; ++i) {
      const double t = t_hi * i / kGrid;
      const double h = envelope_objective(spec, lambda, t);
      if (h > best) {
        best = h;
        best_i = i;
      }
    }
    if (best_i < kGrid) break;
    t_hi *= 2.0;
    if (attempt == 7) {
      throw std::runtime_error(
          "fit_decay_envelope: objective still increasing at search edge (internal error)");
    }
  }

  // Golden-section refinement on the bracketing interval.
  const double step = t_hi / kGrid;
  double a = std::max(0.0, t_hi * best_i / kGrid - step);
  double b = std::min(t_hi, t_hi * best_i / kGrid + step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = envelope_objective(spec, lambda, x1);
  double f2 = envelope_objective(spec, lambda, x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + b); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = envelope_objective(spec, lambda, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = envelope_objective(spec, lambda, x1);
    }
  }
  best = std::max({best, f1, f2});

  DecayEnvelope env;
  env.lambda = lambda;
  env.kappa = best * (1.0 + 1e-12);

  // Certification grid: decreasing radial majorant E(r) of kernel^2 must sit
  // under kappa * exp(-lambda r). E is computed by suffix-max over a fine grid
  // that extends far enough for the Gaussian tail to be negligible.
  const double r_check = 20.0 * spec.alpha;
  const double r_tail = std::max(r_check, t_hi);
  const int fine = 40000;
  std::vector<double> sq(fine + 1);
  for (int i = 0; i <= fine; ++i) {
    const double t = r_tail * i / fine;
    const double k = kernel_value_radial(spec, t);
    sq[i] = k * k;
  }
  for (int i = fine - 1; i >= 0; --i) sq[i] = std::max(sq[i], sq[i + 1]);
  for (int j = 0; j < 200; ++j) {
    const double r = r_check * j / 199.0;
    const int idx = static_cast<int>(std::ceil(r / r_tail * fine));
    const double majorant = sq[std::min(idx, fine)];
    if (majorant > env.bound(r) + 1e-12) {
      throw std::runtime_error("fit_decay_envelope: certification failed at r=" +
                               std::to_string(r));
    }
  }
  return env;
}

}  // namespace steindpp
