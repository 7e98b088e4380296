#pragma once

#include "steindpp/kernel.hpp"

namespace steindpp {

// Explicit normal-approximation bound machinery for square block sums of
// cube variables under an exponential covariance-decay envelope
// (kappa, lambda), a uniform third-moment bound M and a variance growth rate
// gamma (variance >= gamma n^d). All functions are pure.

struct MuNu {
  double mu = 0.0;
  double nu = 0.0;
};

// mu = e^{2 lambda/3} / (e^{lambda/3} - 1)^2, nu = e^{lambda} / (e^{lambda/3} - 1)^2.
MuNu mu_nu(double lambda);

// Rate constant theta inside the exponentially decaying bound terms:
//   (lambda/3) * [ sqrt(2 gamma) kappa^{1/3} Q_d / (18^{d+1} sqrt(pi) d M) ]^{1/(2d+1)}
// with Q_d = (4 mu + 2 nu)^d - (2 nu)^d.
double exponential_rate(int d, double third_moment, double kappa, double gamma, double lambda);

struct SteinConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

SteinConstants bound_constants(int d, double third_moment, double kappa, double gamma,
                               double lambda);

struct BlockLength {
  int l = 1;           // floor of the raw optimum, at least 1
  double l_raw = 0.0;  // pre-floor value
  bool optimal = true; // false when the floor is 0 (n too small); l reported as 1
};

// l = floor( [ sqrt(2 gamma) kappa^{1/3} Q_d n^{d/2} / (18^{d+1} sqrt(pi) M) ]^{1/(2d+1)} ).
BlockLength optimal_block_length(int d, double third_moment, double kappa, double gamma,
                                 double lambda, double n);

struct BoundInputs {
  int dim = 1;
  double third_moment = 1.0;  // uniform bound on ||Y_i||_3
  DecayEnvelope envelope;     // kappa, lambda
  double variance_rate = 1.0; // gamma
  double n = 1.0;             // window side (index cube {1..n}^d)
};

struct BoundReport {
  double mu = 0.0, nu = 0.0;
  double theta = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double n = 0.0;
  int l_star = 1;
  bool l_optimal = true;
  double term1 = 0.0, term2 = 0.0, term3 = 0.0;
  double total = 0.0;
  double rate_exponent = 0.0;  // d / (4d + 2)
};

// Three-term Wasserstein bound:
//   term1 = C1 n^{-d/(4d+2)}
//   term2 = C2 n^{d(4d+1)/(6d+3)} / exp(theta n^{d/(4d+2)})
//   term3 = C3 n^{7d/6} / exp(2 theta n^{d/(4d+2)})
BoundReport wasserstein_bound(const BoundInputs& inputs);

struct RelaxedRate {
  bool valid = false;
  double exponent = 0.0;  // the bound decays like n^{-exponent} when valid
};

// Variance growth n^s instead of n^d: admissible iff s > (4d+2) d / (4d+3);
// the decay exponent becomes ((4d+3)/(4d+2)) s - d.
RelaxedRate relaxed_rate(int d, double s);

// Covariance bound alpha^{1/r} |X|_p |Y|_q with 1/p + 1/q + 1/r = 1.
// p and q may be infinity; requires 1/p + 1/q <= 1 and alpha in [0, 1/4].
double rio_covariance_bound(double alpha, double p, double q, double norm_x, double norm_y);

// Mixing coefficient bound for regions of volumes a, b at distance c:
// a * b * kappa * exp(-lambda c).
double alpha_mixing_bound(double a, double b, double c, const DecayEnvelope& envelope);

// Closed forms with brute-force fallback near the removable singularity:
//   weighted_geom_sum:  sum_{k=1}^{n-1} (n-k) w^k = w((n-1) - n w + w^n)/(w-1)^2
//   symmetric_geom_sum: n + sum_{a=1}^{n-1} (n-a)(v^a + v^{-a}) = v^{1-n}(v^n-1)^2/(v-1)^2
double weighted_geom_sum(int n, double w);
double symmetric_geom_sum(int n, double v);

// Kolmogorov distance to the standard normal from a Wasserstein distance:
// sqrt(2 c w1) with c = (2 pi)^{-1/2}, the supremum of the normal density.
double kolmogorov_from_wasserstein(double w1);

}  // namespace steindpp
