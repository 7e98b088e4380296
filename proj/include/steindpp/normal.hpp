#pragma once

namespace steindpp {

double normal_pdf(double t);
double normal_cdf(double t);

// Inverse of normal_cdf on (0, 1); returns -inf / +inf at the endpoints.
double normal_quantile(double p);

// Antiderivative of the normal CDF: G(t) = t*Phi(t) + phi(t), G(-inf) = 0.
double normal_cdf_antiderivative(double t);

}  // namespace steindpp
