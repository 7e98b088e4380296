#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "steindpp/geometry.hpp"
#include "steindpp/kernel.hpp"
#include "steindpp/sampler.hpp"
#include "steindpp/statistics.hpp"
#include "steindpp/stein_bounds.hpp"

namespace steindpp {

// Exact L1 distance between the empirical CDF of the samples and the standard
// normal CDF: the integral is evaluated piecewise between order statistics,
// splitting each piece at the crossing point Phi^{-1}(k/R) and using the
// antiderivative t Phi(t) + phi(t); the tails are handled analytically.
// Requires at least 2 samples.
double empirical_wasserstein_to_normal(std::vector<double> samples);

// sup_t |F_R(t) - Phi(t)| over the order statistics (both jump sides).
double empirical_kolmogorov_to_normal(std::vector<double> samples);

struct ExperimentConfig {
  LaguerreGaussianSpec kernel{1, 0.2, 1.0, 1};
  LocalStatistic statistic = LocalStatistic::count(0.5);
  std::vector<int> n_list;
  int replications = 100;
  std::uint64_t master_seed = 0;
  double lambda_envelope = 1.0;
  int threads = 0;  // 0 = hardware concurrency
};

struct MomentEstimates {
  double sigma2_hat = 0.0;
  double sigma2_stderr = 0.0;
  double m_hat = 0.0;        // max over interior cubes of (E|Y_i|^3)^{1/3}
  double gamma_hat = 0.0;    // sigma2_hat / n^d at the largest n, shared
  double mean_per_cube = 0.0;
  bool degenerate = false;   // all replications equal; bound not evaluable
};

// Monte-Carlo moment estimation from replicated patterns, keyed by window
// side n. mean_per_cube comes from the central interior cube; gamma_hat from
// the largest n only and is copied into every entry.
std::map<int, MomentEstimates> estimate_moments(
    const ExperimentConfig& config, const std::map<int, std::vector<PointPattern>>& patterns_by_n);

struct VerificationRow {
  int n = 0;
  MomentEstimates moments;
  double w1 = 0.0;
  double kolmogorov = 0.0;
  BoundReport bound;
  bool dominated = false;
  bool kw_consistent = false;  // K <= sqrt(2 (2pi)^{-1/2} W1) + 2/R
  bool failed = false;
  std::string message;
  std::vector<double> wn_samples;  // kept only on request
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  double loglog_slope = 0.0;        // of w1 against n, over successful rows
  double rate_exponent_ref = 0.0;   // d/(4d+2)
  std::uint64_t master_seed = 0;
};

// Full pipeline: simulate R patterns per n, standardize the functional by its
// Monte-Carlo mean and standard deviation, estimate the empirical distances,
// evaluate the explicit bound at the estimated (M, kappa, gamma) and record
// dominance. Per-n failures mark the row and the run continues.
VerificationReport run_experiment(const ExperimentConfig& config, bool keep_samples = false);

struct AssociationCheck {
  double cov_hat = 0.0;
  double stderr_ = 0.0;
  bool pass = false;
};

// Sample covariance of (N(A), N(B)) for disjoint boxes inside the window
// [0, max n]^d; pass when cov_hat <= 3 stderr.
AssociationCheck negative_association_check(const ExperimentConfig& config, const Box& a,
                                            const Box& b);

struct InteriorApproxRow {
  int n = 0;
  double var_diff_hat = 0.0;
  double ratio_to_n_pow_dminus1 = 0.0;
};

struct InteriorApproxReport {
  std::vector<InteriorApproxRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool scaling_ok = false;  // ratios within a factor 3 across the n list
};

// Monte-Carlo variance of f(X on window) minus the interior-restricted
// functional, compared with the boundary scaling n^{d-1}. The interior cube
// set defaults to interior_index_set(n, tau, d); tests may override it.
InteriorApproxReport interior_approximation_check(
    const ExperimentConfig& config,
    const std::function<InteriorIndexSet(int)>& interior_for_n = {});

}  // namespace steindpp
