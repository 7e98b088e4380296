#pragma once

#include <span>
#include <vector>

#include "steindpp/kernel.hpp"

namespace steindpp {

// Spectral density of a stationary Laguerre-Gaussian kernel under the
// unitary ordinary-frequency convention
//   phi(xi) = integral of kernel(z) * exp(-2 pi i xi . z) dz,
// so the existence gate for a determinantal process reads sup phi <= 1 and
// the per-volume normalization is integral(phi) = rho.
//
// m = 1 has the closed form rho * pi^{d/2} alpha^d exp(-pi^2 alpha^2 |xi|^2);
// m > 1 is computed by a numeric radial transform (composite Gauss-Legendre
// against the isotropic Fourier kernel) cached on a radial grid with cubic
// interpolation. Immutable after construction; safe for concurrent reads.
class SpectralDensity {
 public:
  enum class Mode { closed_form, numeric_radial };

  // Throws std::runtime_error (invalid kernel) if the maximum evaluated
  // density exceeds 1 + 1e-9, and if the normalization check
  // |integral(phi)/rho - 1| <= 1e-3 fails.
  explicit SpectralDensity(const LaguerreGaussianSpec& spec);

  double radial(double freq_radius) const;
  double operator()(std::span<const double> xi) const;

  Mode mode() const { return mode_; }
  double max_value() const { return max_value_; }
  double integral() const { return integral_; }
  // Frequency radius beyond which the density is numerically zero.
  double support_radius() const { return cap_; }
  const LaguerreGaussianSpec& spec() const { return spec_; }

 private:
  double transform_radial(double u) const;

  LaguerreGaussianSpec spec_;
  Mode mode_;
  double cap_ = 0.0;
  double max_value_ = 0.0;
  double integral_ = 0.0;
  std::vector<double> grid_;  // numeric mode: phi on uniform radii [0, cap_]
};

SpectralDensity spectral_density(const LaguerreGaussianSpec& spec);

}  // namespace steindpp
