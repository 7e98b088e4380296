#include "steindpp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace steindpp {

namespace {

// Replication seeds are keyed by (n, replication) so rows draw disjoint
// streams even when they share the master seed.
SeedSpec replication_seed(std::uint64_t master, int n, int rep) {
  return SeedSpec{master, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(rep)};
}

struct SampleStats {
  double mean = 0.0;
  double var = 0.0;     // unbiased
  double var_se = 0.0;  // standard error of the variance estimate
};

SampleStats sample_stats(const std::vector<double>& values) {
  SampleStats s;
  const std::size_t n = values.size();
  if (n == 0) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(n);
  if (n < 2) return s;
  double m2 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - s.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  s.var = m2 / static_cast<double>(n - 1);
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  const double var_of_var = std::max(0.0, m4 - m2 * m2) / static_cast<double>(n);
  s.var_se = std::sqrt(var_of_var);
  return s;
}

void validate_config(const ExperimentConfig& config, bool for_distance) {
  if (config.n_list.empty()) throw std::invalid_argument("ExperimentConfig: n_list is empty");
  for (std::size_t i = 1; i < config.n_list.size(); ++i) {
    if (config.n_list[i] <= config.n_list[i - 1]) {
      throw std::invalid_argument("ExperimentConfig: n_list must be strictly increasing");
    }
  }
  if (config.n_list.front() < 1) throw std::invalid_argument("ExperimentConfig: n must be >= 1");
  if (config.replications < 2) {
    throw std::invalid_argument("ExperimentConfig: replications must be >= 2");
  }
  if (for_distance && config.replications < 100) {
    throw std::invalid_argument(
        "ExperimentConfig: replications must be >= 100 for distance estimation");
  }
  if (!(config.lambda_envelope > 0.0)) {
    throw std::invalid_argument("ExperimentConfig: lambda_envelope must be > 0");
  }
  if (!config.kernel.valid()) {
    throw std::runtime_error("ExperimentConfig: invalid kernel, alpha = " +
                             std::to_string(config.kernel.alpha) +
                             " exceeds the admissible maximum " +
                             std::to_string(config.kernel.alpha_max()));
  }
}

std::vector<PointPattern> simulate(const DppSampler& sampler, std::uint64_t master, int n,
                                   int replications, int threads) {
  std::vector<PointPattern> patterns(replications);
  run_replications(
      replications,
      [&](int rep) { patterns[rep] = sampler.sample(replication_seed(master, n, rep)); },
      threads);
  return patterns;
}

}  // namespace

std::map<int, MomentEstimates> estimate_moments(
    const ExperimentConfig& config,
    const std::map<int, std::vector<PointPattern>>& patterns_by_n) {
  if (patterns_by_n.empty()) throw std::invalid_argument("estimate_moments: no patterns");
  const int dim = config.kernel.dim;
  const double tau = config.statistic.tau();
  std::map<int, MomentEstimates> out;

  for (const auto& [n, patterns] : patterns_by_n) {
    const std::size_t reps = patterns.size();
    if (reps < 2) throw std::invalid_argument("estimate_moments: need >= 2 replications");

    const InteriorIndexSet interior = interior_index_set(n, tau, dim);
    if (interior.empty()) {
      throw std::invalid_argument("estimate_moments: empty interior for n = " + std::to_string(n) +
                                  " (need n > 2 (tau + 1/2))");
    }
    const auto interior_cubes = interior.materialize();

    // Central interior cube, used for the per-cube mean.
    IndexVec central(dim);
    for (int q = 0; q < dim; ++q) central[q] = (interior.lo + interior.hi) / 2;

    std::vector<double> f_values(reps, 0.0);
    std::vector<std::vector<double>> cube_values(interior_cubes.size(),
                                                 std::vector<double>(reps, 0.0));
    std::vector<double> central_values(reps, 0.0);

    run_replications(
        static_cast<int>(reps),
        [&](int rep) {
          const auto& pat = patterns[rep];
          f_values[rep] = eval_functional(config.statistic, pat);
          const auto per_cube = per_cube_functional(config.statistic, pat);
          for (std::size_t c = 0; c < interior_cubes.size(); ++c) {
            const auto it = per_cube.find(interior_cubes[c]);
            cube_values[c][rep] = (it != per_cube.end()) ? it->second : 0.0;
          }
          const auto itc = per_cube.find(central);
          central_values[rep] = (itc != per_cube.end()) ? itc->second : 0.0;
        },
        config.threads);

    MomentEstimates est;
    const SampleStats fs = sample_stats(f_values);
    est.sigma2_hat = fs.var;
    est.sigma2_stderr = fs.var_se;
    est.degenerate = !(fs.var > 0.0);

    double mean_cube = 0.0;
    for (double v : central_values) mean_cube += v;
    est.mean_per_cube = mean_cube / static_cast<double>(reps);

    double m_best = 0.0;
    for (const auto& values : cube_values) {
      double third = 0.0;
      for (double v : values) {
        const double y = std::abs(v - est.mean_per_cube);
        third += y * y * y;
      }
      third /= static_cast<double>(reps);
      m_best = std::max(m_best, std::cbrt(third));
    }
    est.m_hat = m_best;
    out[n] = est;
  }

  // Variance growth rate from the largest window, shared across rows.
  const int n_max = patterns_by_n.rbegin()->first;
  const double gamma = out[n_max].sigma2_hat / std::pow(static_cast<double>(n_max), dim);
  for (auto& [n, est] : out) est.gamma_hat = gamma;
  return out;
}

VerificationReport run_experiment(const ExperimentConfig& config, bool keep_samples) {
  validate_config(config, /*for_distance=*/true);
  const int dim = config.kernel.dim;
  const DecayEnvelope envelope = fit_decay_envelope(config.kernel, config.lambda_envelope);

  VerificationReport report;
  report.master_seed = config.master_seed;
  report.rate_exponent_ref = dim / (4.0 * dim + 2.0);

  std::map<int, std::vector<PointPattern>> patterns_by_n;
  for (int n : config.n_list) {
    const DppSampler sampler(config.kernel, Window(dim, static_cast<double>(n)));
    patterns_by_n[n] = simulate(sampler, config.master_seed, n, config.replications,
                                config.threads);
  }

  const auto moments = estimate_moments(config, patterns_by_n);

  for (int n : config.n_list) {
    VerificationRow row;
    row.n = n;
    row.moments = moments.at(n);
    const auto& patterns = patterns_by_n.at(n);
    try {
      if (row.moments.degenerate) {
        throw std::runtime_error("degenerate variance: all replications equal");
      }
      std::vector<double> f_values(patterns.size());
      for (std::size_t rep = 0; rep < patterns.size(); ++rep) {
        f_values[rep] = eval_functional(config.statistic, patterns[rep]);
      }
      const SampleStats fs = sample_stats(f_values);
      const double sigma = std::sqrt(fs.var);
      std::vector<double> wn(f_values.size());
      for (std::size_t i = 0; i < f_values.size(); ++i) wn[i] = (f_values[i] - fs.mean) / sigma;

      row.w1 = empirical_wasserstein_to_normal(wn);
      row.kolmogorov = empirical_kolmogorov_to_normal(wn);
      row.kw_consistent =
          row.kolmogorov <= kolmogorov_from_wasserstein(row.w1) +
                                2.0 / static_cast<double>(config.replications);

      BoundInputs inputs;
      inputs.dim = dim;
      inputs.third_moment = row.moments.m_hat;
      inputs.envelope = envelope;
      inputs.variance_rate = row.moments.gamma_hat;
      inputs.n = static_cast<double>(n);
      row.bound = wasserstein_bound(inputs);
      row.dominated = row.w1 <= row.bound.total;
      if (keep_samples) row.wn_samples = std::move(wn);
    } catch (const std::exception& e) {
      row.failed = true;
      row.message = e.what();
    }
    report.rows.push_back(std::move(row));
  }

  // Log-log slope of the empirical distance across successful rows.
  std::vector<double> xs, ys;
  for (const auto& row : report.rows) {
    if (!row.failed && row.w1 > 0.0) {
      xs.push_back(std::log(static_cast<double>(row.n)));
      ys.push_back(std::log(row.w1));
    }
  }
  if (xs.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    report.loglog_slope = sxy / sxx;
  }
  return report;
}

AssociationCheck negative_association_check(const ExperimentConfig& config, const Box& a,
                                            const Box& b) {
  validate_config(config, /*for_distance=*/false);
  if (!a.disjoint_from(b)) {
    throw std::invalid_argument("negative_association_check: boxes must be disjoint");
  }
  const int n = config.n_list.back();
  const Window window(config.kernel.dim, static_cast<double>(n));
  if (!a.inside_window(window) || !b.inside_window(window)) {
    throw std::invalid_argument("negative_association_check: boxes must lie inside the window");
  }

  const DppSampler sampler(config.kernel, window);
  const int reps = config.replications;
  std::vector<double> na(reps), nb(reps);
  run_replications(
      reps,
      [&](int rep) {
        const PointPattern pat = sampler.sample(replication_seed(config.master_seed, n, rep));
        na[rep] = static_cast<double>(pat.count_in(a));
        nb[rep] = static_cast<double>(pat.count_in(b));
      },
      config.threads);

  double mean_a = 0.0, mean_b = 0.0;
  for (int i = 0; i < reps; ++i) {
    mean_a += na[i];
    mean_b += nb[i];
  }
  mean_a /= reps;
  mean_b /= reps;
  std::vector<double> products(reps);
  double cov = 0.0;
  for (int i = 0; i < reps; ++i) {
    products[i] = (na[i] - mean_a) * (nb[i] - mean_b);
    cov += products[i];
  }
  cov /= (reps - 1);
  double var_p = 0.0;
  const double mean_p = cov * (reps - 1) / static_cast<double>(reps);
  for (int i = 0; i < reps; ++i) var_p += (products[i] - mean_p) * (products[i] - mean_p);
  var_p /= (reps - 1);

  AssociationCheck check;
  check.cov_hat = cov;
  check.stderr_ = std::sqrt(var_p / reps);
  check.pass = check.cov_hat <= 3.0 * check.stderr_;
  return check;
}

InteriorApproxReport interior_approximation_check(
    const ExperimentConfig& config, const std::function<InteriorIndexSet(int)>& interior_for_n) {
  validate_config(config, /*for_distance=*/false);
  if (config.n_list.size() < 2) {
    throw std::invalid_argument("interior_approximation_check: need two or more n values");
  }
  const int dim = config.kernel.dim;

  InteriorApproxReport report;
  for (int n : config.n_list) {
    const InteriorIndexSet interior = interior_for_n
                                          ? interior_for_n(n)
                                          : interior_index_set(n, config.statistic.tau(), dim);
    const DppSampler sampler(config.kernel, Window(dim, static_cast<double>(n)));
    std::vector<double> diffs(config.replications);
    run_replications(
        config.replications,
        [&](int rep) {
          const PointPattern pat = sampler.sample(replication_seed(config.master_seed, n, rep));
          const double full = eval_functional(config.statistic, pat);
          const double restricted = restricted_functional(config.statistic, pat, interior);
          diffs[rep] = full - restricted;
        },
        config.threads);
    const SampleStats stats = sample_stats(diffs);
    InteriorApproxRow row;
    row.n = n;
    row.var_diff_hat = stats.var;
    row.ratio_to_n_pow_dminus1 = stats.var / std::pow(static_cast<double>(n), dim - 1);
    report.rows.push_back(row);
  }

  report.min_ratio = report.rows.front().ratio_to_n_pow_dminus1;
  report.max_ratio = report.min_ratio;
  for (const auto& row : report.rows) {
    report.min_ratio = std::min(report.min_ratio, row.ratio_to_n_pow_dminus1);
    report.max_ratio = std::max(report.max_ratio, row.ratio_to_n_pow_dminus1);
  }
  report.scaling_ok = report.min_ratio > 0.0 && report.max_ratio < 3.0 * report.min_ratio;
  return report;
}

}  // namespace steindpp
