#pragma once

namespace steindpp {

// Binomial coefficient with real upper argument: C(z, j) for integer j >= 0.
// Uses log-gamma when every gamma argument is positive, exact falling-factorial
// product otherwise (negative z - j + 1 hits gamma sign changes).
double binomial_real(double z, int j);

// Generalized Laguerre polynomial L_n^s(x) by the three-term recurrence
//   (k+1) L_{k+1}^s = (2k+1+s-x) L_k^s - (k+s) L_{k-1}^s,
// with L_0^s = 1 and L_1^s = 1 + s - x. Total function for n >= 0.
double laguerre(int n, double s, double x);

}  // namespace steindpp
