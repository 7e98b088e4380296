#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "steindpp/geometry.hpp"
#include "steindpp/kernel.hpp"
#include "steindpp/rng.hpp"
#include "steindpp/spectral.hpp"

namespace steindpp {

// Approximate sampler for a stationary determinantal process on [0, L]^d via
// the Fourier basis e_k(x) = L^{-d/2} exp(2 pi i k.x / L):
//  1. eigenvalue lambda_k = phi(k/L), clipped to [0,1];
//  2. truncation |k|_inf <= K with tail mass below tail_tol of the total
//     (total taken from the lattice sum of the kernel, which equals the full
//     spectral sum);
//  3. independent Bernoulli(lambda_k) selection of basis functions;
//  4. sequential projection sampling of the selected finite-rank kernel.
// Setup is per (spec, window) and immutable afterwards; sample() is const and
// safe to call concurrently with distinct seeds.
class DppSampler {
 public:
  DppSampler(const LaguerreGaussianSpec& spec, const Window& window, double tail_tol = 1e-3,
             int kmax_cap = 4096);

  PointPattern sample(const SeedSpec& seed) const;

  double eigenvalue_sum() const { return eigenvalue_sum_; }
  int kmax() const { return kmax_; }
  const Window& window() const { return window_; }
  const SpectralDensity& density() const { return density_; }

 private:
  LaguerreGaussianSpec spec_;
  Window window_;
  SpectralDensity density_;
  int kmax_ = 0;
  double eigenvalue_sum_ = 0.0;
  std::vector<std::vector<int>> lattice_;  // frequency vectors, row-major order
  std::vector<double> eigenvalues_;        // clipped to [0,1], same order
};

// One-shot convenience wrapper.
PointPattern sample_dpp(const LaguerreGaussianSpec& spec, const Window& window,
                        const SeedSpec& seed);

struct IntensityEstimate {
  double rho_hat = 0.0;
  double stderr_ = 0.0;
};

// Mean count per unit volume across replications on a common window.
IntensityEstimate empirical_intensity(const std::vector<PointPattern>& patterns);

struct PcfBin {
  double r_lo = 0.0, r_hi = 0.0;
  double g_hat = 0.0;
  double stderr_ = 0.0;
  std::size_t pair_count = 0;
  bool has_data = false;
};

// Translation-corrected binned pair correlation estimator. Each ordered pair
// at displacement z contributes 1/prod_j(L - |z_j|); bin totals are divided
// by rho_hat^2 times the shell volume. rho_hat is pooled over all patterns.
std::vector<PcfBin> empirical_pcf(const std::vector<PointPattern>& patterns,
                                  const std::vector<double>& bin_edges);

// Deterministic replication driver: results[i] = fn(i) with per-index seeds
// derived by the caller inside fn. Runs on up to n_threads workers; the
// output order never depends on scheduling.
void run_replications(int count, const std::function<void(int)>& fn, int n_threads = 0);

}  // namespace steindpp
