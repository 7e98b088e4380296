#include "steindpp/laguerre.hpp"

#include <cmath>
#include <stdexcept>

namespace steindpp {

double binomial_real(double z, int j) {
  if (j < 0) throw std::invalid_argument("binomial_real: lower index must be >= 0");
  if (j == 0) return 1.0;
  if (z - j + 1.0 > 0.0) {
    return std::exp(std::lgamma(z + 1.0) - std::lgamma(j + 1.0) - std::lgamma(z - j + 1.0));
  }
  double prod = 1.0;
  for (int i = 1; i <= j; ++i) prod *= (z - j + i) / i;
  return prod;
}

double laguerre(int n, double s, double x) {
  if (n < 0) throw std::invalid_argument("laguerre: degree must be >= 0");
  double prev = 1.0;  // L_0
  if (n == 0) return prev;
  double cur = 1.0 + s - x;  // L_1
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + s - x) * cur - (k + s) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace steindpp
