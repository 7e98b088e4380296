#pragma once

#include "steindpp/kernel.hpp"
#include "steindpp/statistics.hpp"

namespace steindpp {

struct VarianceConditionResult {
  double lower_estimate = 0.0;
  double quadrature_error = 0.0;
  bool satisfied = false;  // estimate positive with margin above the quadrature error
};

// Sufficient condition for the variance of the functional to grow like the
// window volume, for statistics supported on subsets of fixed size p:
//   (1/n^d) Int_{window^p} g({x_1..x_p}) det[K(x_i,x_j)] dx > 0.
// Requires a strictly valid kernel (operator norm < 1) and p in {1, 2}:
//   p = 1: rho times the window average of g on singletons;
//   p = 2: radial quadrature of g(u) (rho^2 - C(u)^2) against the exact
//          covariogram weight of the cubic window (registered radial pair
//          statistics only).
VarianceConditionResult sufficient_variance_condition(const LaguerreGaussianSpec& spec,
                                                      const LocalStatistic& stat, int p,
                                                      double n);

}  // namespace steindpp
