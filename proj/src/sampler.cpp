#include "steindpp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <thread>

namespace steindpp {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Total spectral mass sum_{k in Z^d} phi(k/L) via the lattice identity
// sum_k phi(k/L) = L^d sum_j C(j L); the right side converges after a few
// terms thanks to the Gaussian kernel tail.
double total_spectral_mass(const LaguerreGaussianSpec& spec, const Window& w) {
  const double scale = spec.alpha * std::sqrt(static_cast<double>(spec.m));
  const int j_max = std::max(1, static_cast<int>(std::ceil(12.0 * scale / w.side)));
  double sum = 0.0;
  std::vector<int> j(spec.dim, -j_max);
  while (true) {
    double r2 = 0.0;
    for (int q = 0; q < spec.dim; ++q) r2 += double(j[q]) * j[q];
    sum += kernel_value_radial(spec, w.side * std::sqrt(r2));
    int q = 0;
    while (q < spec.dim && ++j[q] > j_max) j[q++] = -j_max;
    if (q == spec.dim) break;
  }
  return std::pow(w.side, spec.dim) * sum;
}

}  // namespace

DppSampler::DppSampler(const LaguerreGaussianSpec& spec, const Window& window, double tail_tol,
                       int kmax_cap)
    : spec_(spec), window_(window), density_(spec) {
  if (window.dim != spec.dim) throw std::invalid_argument("DppSampler: dimension mismatch");
  if (!spec.valid()) {
    throw std::runtime_error("DppSampler: invalid kernel, alpha = " + std::to_string(spec.alpha) +
                             " exceeds the admissible maximum " + std::to_string(spec.alpha_max()));
  }

  const double total = total_spectral_mass(spec, window);
  const int d = spec.dim;
  const double L = window.side;

  // Grow the cube truncation until the captured mass meets the tail budget.
  double captured = density_.radial(0.0);
  int K = 0;
  auto shell_mass = [&](int k) {
    // Mass of the lattice shell |k|_inf == k.
    double mass = 0.0;
    std::vector<int> idx(d, -k);
    while (true) {
      int norm = 0;
      for (int q = 0; q < d; ++q) norm = std::max(norm, std::abs(idx[q]));
      if (norm == k) {
        double r2 = 0.0;
        for (int q = 0; q < d; ++q) r2 += double(idx[q]) * idx[q];
        mass += density_.radial(std::sqrt(r2) / L);
      }
      int q = 0;
      while (q < d && ++idx[q] > k) idx[q++] = -k;
      if (q == d) break;
    }
    return mass;
  };
  while (total - captured >= tail_tol * total) {
    ++K;
    if (K > kmax_cap) {
      throw std::runtime_error("DppSampler: truncation failure, spectral tail above " +
                               std::to_string(tail_tol) + " of total at K = " +
                               std::to_string(kmax_cap));
    }
    captured += shell_mass(K);
  }
  kmax_ = K;

  // Materialize the lattice in fixed row-major order with clipped eigenvalues.
  eigenvalue_sum_ = 0.0;
  std::vector<int> idx(d, -K);
  while (true) {
    double r2 = 0.0;
    for (int q = 0; q < d; ++q) r2 += double(idx[q]) * idx[q];
    double lam = density_.radial(std::sqrt(r2) / L);
    if (lam > 1.0 + 1e-9) {
      throw std::runtime_error("DppSampler: invalid kernel, eigenvalue " + std::to_string(lam) +
                               " exceeds 1");
    }
    lam = std::clamp(lam, 0.0, 1.0);
    lattice_.push_back(idx);
    eigenvalues_.push_back(lam);
    eigenvalue_sum_ += lam;
    int q = 0;
    while (q < d && ++idx[q] > K) idx[q++] = -K;
    if (q == d) break;
  }
}

PointPattern DppSampler::sample(const SeedSpec& seed) const {
  Rng rng(seed);
  const int d = spec_.dim;
  const double L = window_.side;

  // Bernoulli selection of basis functions.
  std::vector<std::size_t> active;
  for (std::size_t a = 0; a < eigenvalues_.size(); ++a) {
    if (eigenvalues_[a] >= 1.0 || rng.bernoulli(eigenvalues_[a])) active.push_back(a);
  }
  const std::size_t rank = active.size();

  PointPattern pat;
  pat.window = window_;
  if (rank == 0) return pat;

  const double inv_vol = 1.0 / window_.volume();
  const double max_density = rank * inv_vol;  // |v(x)|^2, constant for this basis

  // Per-dimension tables exp(2 pi i k x_q / L) for k in [-K, K].
  const int width = 2 * kmax_ + 1;
  std::vector<std::complex<double>> table(static_cast<std::size_t>(d) * width);
  std::vector<std::complex<double>> v(rank);
  auto eval_basis = [&](std::span<const double> x) {
    for (int q = 0; q < d; ++q) {
      const double ang = kTwoPi * x[q] / L;
      const std::complex<double> step = std::polar(1.0, ang);
      std::complex<double> cur = std::polar(1.0, -ang * kmax_);
      for (int k = 0; k < width; ++k) {
        table[q * width + k] = cur;
        cur *= step;
      }
    }
    const double norm = std::pow(L, -0.5 * d);
    for (std::size_t a = 0; a < rank; ++a) {
      const auto& kvec = lattice_[active[a]];
      std::complex<double> prod(norm, 0.0);
      for (int q = 0; q < d; ++q) prod *= table[q * width + (kvec[q] + kmax_)];
      v[a] = prod;
    }
  };

  std::vector<std::vector<std::complex<double>>> ortho;  // orthonormal basis of sampled directions
  ortho.reserve(rank);
  std::vector<double> x(d);

  for (std::size_t j = 0; j < rank; ++j) {
    const std::size_t max_trials = 100000 * (rank + 1);
    std::size_t trial = 0;
    while (true) {
      if (++trial > max_trials) {
        throw std::runtime_error("DppSampler: conditional sampling failed to accept a point");
      }
      for (int q = 0; q < d; ++q) x[q] = rng.uniform(0.0, L);
      eval_basis(x);
      double residual = max_density;
      for (std::size_t i = 0; i < j; ++i) {
        std::complex<double> ip(0.0, 0.0);
        const auto& u = ortho[i];
        for (std::size_t a = 0; a < rank; ++a) ip += std::conj(u[a]) * v[a];
        residual -= std::norm(ip);
      }
      if (residual < -1e-9) {
        throw std::runtime_error("DppSampler: conditional intensity " + std::to_string(residual) +
                                 " below the numeric guard (internal error)");
      }
      if (residual < 0.0) residual = 0.0;
      if (rng.uniform01() * max_density < residual) break;
    }
    pat.push_back(x);
    if (j + 1 < rank) {
      // Gram-Schmidt with one re-orthogonalization pass.
      std::vector<std::complex<double>> w = v;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < j; ++i) {
          const auto& u = ortho[i];
          std::complex<double> ip(0.0, 0.0);
          for (std::size_t a = 0; a < rank; ++a) ip += std::conj(u[a]) * w[a];
          for (std::size_t a = 0; a < rank; ++a) w[a] -= ip * u[a];
        }
      }
      double nrm2 = 0.0;
      for (const auto& c : w) nrm2 += std::norm(c);
      if (!(nrm2 > 0.0)) {
        throw std::runtime_error("DppSampler: degenerate Gram-Schmidt direction");
      }
      const double inv = 1.0 / std::sqrt(nrm2);
      for (auto& c : w) c *= inv;
      ortho.push_back(std::move(w));
    }
  }
  return pat;
}

PointPattern sample_dpp(const LaguerreGaussianSpec& spec, const Window& window,
                        const SeedSpec& seed) {
  return DppSampler(spec, window).sample(seed);
}

IntensityEstimate empirical_intensity(const std::vector<PointPattern>& patterns) {
  if (patterns.empty()) throw std::invalid_argument("empirical_intensity: no patterns");
  const Window& w = patterns.front().window;
  for (const auto& p : patterns) {
    if (p.window.dim != w.dim || p.window.side != w.side) {
      throw std::invalid_argument("empirical_intensity: windows differ across patterns");
    }
  }
  const double vol = w.volume();
  const std::size_t n = patterns.size();
  double mean = 0.0;
  for (const auto& p : patterns) mean += static_cast<double>(p.size());
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (const auto& p : patterns) {
    const double dcount = static_cast<double>(p.size()) - mean;
    var += dcount * dcount;
  }
  var = (n > 1) ? var / static_cast<double>(n - 1) : 0.0;
  IntensityEstimate est;
  est.rho_hat = mean / vol;
  est.stderr_ = std::sqrt(var / static_cast<double>(n)) / vol;
  return est;
}

std::vector<PcfBin> empirical_pcf(const std::vector<PointPattern>& patterns,
                                  const std::vector<double>& bin_edges) {
  if (patterns.empty()) throw std::invalid_argument("empirical_pcf: no patterns");
  if (bin_edges.size() < 3) throw std::invalid_argument("empirical_pcf: need at least 2 bins");
  for (std::size_t i = 1; i < bin_edges.size(); ++i) {
    if (!(bin_edges[i] > bin_edges[i - 1])) {
      throw std::invalid_argument("empirical_pcf: bin edges must be strictly increasing");
    }
  }
  const Window& w = patterns.front().window;
  const int d = w.dim;
  const double diameter = w.side * std::sqrt(static_cast<double>(d));
  if (!(bin_edges.front() >= 0.0) || !(bin_edges.back() <= diameter)) {
    throw std::invalid_argument("empirical_pcf: bin range outside window diameter");
  }

  const std::size_t n_bins = bin_edges.size() - 1;
  const std::size_t n_rep = patterns.size();

  const auto rho = empirical_intensity(patterns);
  const double rho2 = rho.rho_hat * rho.rho_hat;
  if (!(rho2 > 0.0)) throw std::invalid_argument("empirical_pcf: empty patterns, no pairs");

  // Shell volumes omega_d (r_hi^d - r_lo^d).
  const double unit_ball = std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  std::vector<double> shell(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    shell[b] = unit_ball * (std::pow(bin_edges[b + 1], d) - std::pow(bin_edges[b], d));
  }

  std::vector<std::vector<double>> per_rep(n_bins, std::vector<double>(n_rep, 0.0));
  std::vector<std::size_t> pair_counts(n_bins, 0);
  for (std::size_t r = 0; r < n_rep; ++r) {
    const auto& pat = patterns[r];
    const std::size_t npts = pat.size();
    for (std::size_t i = 0; i < npts; ++i) {
      for (std::size_t j = i + 1; j < npts; ++j) {
        double dist2 = 0.0;
        double weight = 1.0;
        for (int q = 0; q < d; ++q) {
          const double dz = pat.coords[i * d + q] - pat.coords[j * d + q];
          dist2 += dz * dz;
          weight *= (w.side - std::abs(dz));
        }
        const double dist = std::sqrt(dist2);
        if (dist < bin_edges.front() || dist >= bin_edges.back()) continue;
        const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), dist);
        const std::size_t b = static_cast<std::size_t>(it - bin_edges.begin()) - 1;
        per_rep[b][r] += 2.0 / weight;  // ordered pairs
        pair_counts[b] += 2;
      }
    }
  }

  std::vector<PcfBin> bins(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    PcfBin& bin = bins[b];
    bin.r_lo = bin_edges[b];
    bin.r_hi = bin_edges[b + 1];
    bin.pair_count = pair_counts[b];
    bin.has_data = pair_counts[b] > 0;
    double mean = 0.0;
    for (double v : per_rep[b]) mean += v;
    mean /= static_cast<double>(n_rep);
    double var = 0.0;
    for (double v : per_rep[b]) var += (v - mean) * (v - mean);
    var = (n_rep > 1) ? var / static_cast<double>(n_rep - 1) : 0.0;
    const double denom = rho2 * shell[b];
    bin.g_hat = mean / denom;
    bin.stderr_ = std::sqrt(var / static_cast<double>(n_rep)) / denom;
  }
  return bins;
}

void run_replications(int count, const std::function<void(int)>& fn, int n_threads) {
  if (count <= 0) return;
  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads <= 0) n_threads = 1;
  }
  n_threads = std::min(n_threads, count);
  if (n_threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    workers.emplace_back([&, t]() {
      for (int i = t; i < count; i += n_threads) fn(i);
    });
  }
  for (auto& th : workers) th.join();
}

}  // namespace steindpp
