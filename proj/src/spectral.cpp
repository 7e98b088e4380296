#include "steindpp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "steindpp/quadrature.hpp"

namespace steindpp {

namespace {
constexpr double kPi = 3.14159265358979323846;

double sphere_surface(int dim) {
  return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}
}  // namespace

// Isotropic Fourier transform at frequency radius u:
//   d=1: 2 Int_0^T C(t) cos(2 pi u t) dt
//   d=2: 2 pi Int_0^T C(t) J_0(2 pi u t) t dt
//   d=3: (2/u) Int_0^T C(t) sin(2 pi u t) t dt
//   d>=4: 2 pi u^{1-d/2} Int_0^T C(t) J_{d/2-1}(2 pi u t) t^{d/2} dt
// The kernel decays like exp(-t^2/(m alpha^2)), so T a few multiples of
// alpha sqrt(m) suffices; panel width tracks the oscillation wavelength.
double SpectralDensity::transform_radial(double u) const {
  const int d = spec_.dim;
  const double scale = spec_.alpha * std::sqrt(static_cast<double>(spec_.m));
  const double t_max = 10.0 * scale;
  const auto& rule = gauss_legendre(16);

  double wavelength = (u > 1e-12) ? 1.0 / u : t_max;
  const double h = std::min(0.5 * scale, 0.25 * wavelength);
  const int panels = std::max(8, static_cast<int>(std::ceil(t_max / h)));

  if (u < 1e-12 || d == 1) {
    if (u < 1e-12) {
      // phi(0) = surface(d) * Int C(t) t^{d-1} dt
      auto f = [&](double t) {
        return kernel_value_radial(spec_, t) * std::pow(t, d - 1);
      };
      return sphere_surface(d) * integrate_composite(f, 0.0, t_max, panels, rule);
    }
    auto f = [&](double t) { return kernel_value_radial(spec_, t) * std::cos(2.0 * kPi * u * t); };
    return 2.0 * integrate_composite(f, 0.0, t_max, panels, rule);
  }
  if (d == 2) {
    auto f = [&](double t) {
      return kernel_value_radial(spec_, t) * std::cyl_bessel_j(0.0, 2.0 * kPi * u * t) * t;
    };
    return 2.0 * kPi * integrate_composite(f, 0.0, t_max, panels, rule);
  }
  if (d == 3) {
    auto f = [&](double t) {
      return kernel_value_radial(spec_, t) * std::sin(2.0 * kPi * u * t) * t;
    };
    return 2.0 / u * integrate_composite(f, 0.0, t_max, panels, rule);
  }
  const double nu = 0.5 * d - 1.0;
  auto f = [&](double t) {
    return kernel_value_radial(spec_, t) * std::cyl_bessel_j(nu, 2.0 * kPi * u * t) *
           std::pow(t, 0.5 * d);
  };
  return 2.0 * kPi * std::pow(u, 1.0 - 0.5 * d) * integrate_composite(f, 0.0, t_max, panels, rule);
}

SpectralDensity::SpectralDensity(const LaguerreGaussianSpec& spec)
    : spec_(spec), mode_(spec.m == 1 ? Mode::closed_form : Mode::numeric_radial) {
  const double scale = spec_.alpha * std::sqrt(static_cast<double>(spec_.m));

  if (mode_ == Mode::closed_form) {
    max_value_ = radial(0.0);
    // Frequency radius where the Gaussian factor reaches ~1e-16.
    cap_ = std::sqrt(37.0) / (kPi * spec_.alpha);
  } else {
    // Find a cap where the transform has decayed to noise level, then cache.
    const double phi0 = transform_radial(0.0);
    if (!(phi0 > 0.0)) {
      throw std::runtime_error("spectral_density: nonpositive value at frequency zero");
    }
    double cap = 8.0 / (kPi * scale / spec_.m);  // generous initial guess
    for (int it = 0; it < 40; ++it) {
      if (std::abs(transform_radial(cap)) < 1e-13 * phi0) break;
      cap *= 1.4;
      if (it == 39) throw std::runtime_error("spectral_density: transform tail does not decay");
    }
    cap_ = cap;
    const int n_grid = 4096;
    grid_.resize(n_grid + 1);
    max_value_ = 0.0;
    for (int i = 0; i <= n_grid; ++i) {
      double v = transform_radial(cap_ * i / n_grid);
      // The exact density is nonnegative; trim quadrature noise in the tail.
      if (v < 0.0 && v > -1e-10 * phi0) v = 0.0;
      if (v < 0.0) {
        throw std::runtime_error("spectral_density: negative density beyond noise level");
      }
      grid_[i] = v;
      max_value_ = std::max(max_value_, v);
    }
  }

  if (max_value_ > 1.0 + 1e-9) {
    throw std::runtime_error(
        "spectral_density: invalid kernel, sup phi = " + std::to_string(max_value_) +
        " exceeds 1 (alpha above the admissible maximum " + std::to_string(spec_.alpha_max()) +
        ")");
  }

  // Normalization: integral over R^d of phi equals the kernel at 0, i.e. rho.
  const auto& rule = gauss_legendre(16);
  auto f = [&](double u) { return radial(u) * std::pow(u, spec_.dim - 1); };
  integral_ = sphere_surface(spec_.dim) * integrate_composite(f, 0.0, cap_, 512, rule);
  if (std::abs(integral_ / spec_.rho - 1.0) > 1e-3) {
    throw std::runtime_error("spectral_density: normalization check failed, integral = " +
                             std::to_string(integral_) + " vs rho = " + std::to_string(spec_.rho));
  }
}

double SpectralDensity::radial(double freq_radius) const {
  const double u = std::abs(freq_radius);
  if (mode_ == Mode::closed_form) {
    const double a = spec_.alpha;
    return spec_.rho * std::pow(kPi, 0.5 * spec_.dim) * std::pow(a, spec_.dim) *
           std::exp(-kPi * kPi * a * a * u * u);
  }
  if (u >= cap_) return 0.0;
  // Catmull-Rom on the uniform radial grid.
  const int n = static_cast<int>(grid_.size()) - 1;
  const double x = u / cap_ * n;
  const int i = std::min(static_cast<int>(x), n - 1);
  const double s = x - i;
  const double p0 = grid_[std::max(i - 1, 0)];
  const double p1 = grid_[i];
  const double p2 = grid_[i + 1];
  const double p3 = grid_[std::min(i + 2, n)];
  const double v = p1 + 0.5 * s * (p2 - p0 + s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                                  s * (3.0 * (p1 - p2) + p3 - p0)));
  return std::max(v, 0.0);
}

double SpectralDensity::operator()(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != spec_.dim) {
    throw std::invalid_argument("SpectralDensity: frequency dimension mismatch");
  }
  double r2 = 0.0;
  for (double c : xi) r2 += c * c;
  return radial(std::sqrt(r2));
}

SpectralDensity spectral_density(const LaguerreGaussianSpec& spec) {
  return SpectralDensity(spec);
}

}  // namespace steindpp
