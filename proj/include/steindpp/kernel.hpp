#pragma once

#include <span>

namespace steindpp {

// Largest alpha for which the Laguerre-Gaussian kernel of order m, intensity
// rho and dimension dim defines an existing determinantal process:
//   [ C(m-1+dim/2, m-1) / (rho (m pi)^{dim/2}) ]^{1/dim}.
double max_admissible_alpha(int m, double rho, int dim);

// Stationary isotropic Laguerre-Gaussian kernel family. m = 1 is the Gaussian
// kernel rho * exp(-|z/alpha|^2). Immutable after construction.
struct LaguerreGaussianSpec {
  int m = 1;
  double alpha = 1.0;
  double rho = 1.0;
  int dim = 1;

  LaguerreGaussianSpec(int m_, double alpha_, double rho_, int dim_);

  double alpha_max() const { return max_admissible_alpha(m, rho, dim); }
  // Existence: alpha <= alpha_max. Strict validity (operator norm < 1,
  // needed for the variance sufficiency check) requires strict inequality.
  bool valid() const { return alpha <= alpha_max(); }
  bool strictly_valid() const { return alpha < alpha_max(); }
};

// Kernel value at displacement z (depends on z only through |z|_2).
double kernel_value(const LaguerreGaussianSpec& spec, std::span<const double> z);
double kernel_value_radial(const LaguerreGaussianSpec& spec, double radius);

// Covariance density of the pair intensities: rho_2(x,y) - rho_1(x) rho_1(y),
// equal to -kernel(x-y)^2 for this real stationary family. Always <= 0.
double covariance_density(const LaguerreGaussianSpec& spec, std::span<const double> x,
                          std::span<const double> y);

// Certified exponential majorant of the squared kernel:
//   sup_{|x-y| >= r} kernel(x-y)^2 <= kappa * exp(-lambda * r) for all r >= 0.
struct DecayEnvelope {
  double kappa = 0.0;
  double lambda = 1.0;

  double bound(double r) const;
};

// Fits kappa for a caller-chosen decay rate lambda as the supremum of
// kernel(t)^2 * exp(lambda*t) over t >= 0 (dense radial grid plus local
// refinement), then certifies the envelope against the decreasing radial
// majorant of the squared kernel on a verification grid. For Gaussian-type
// tails the supremum is finite for every lambda > 0; a maximizer escaping to
// the right edge of the search range is reported as an internal error.
DecayEnvelope fit_decay_envelope(const LaguerreGaussianSpec& spec, double lambda);

}  // namespace steindpp
