#pragma once

#include <functional>
#include <vector>

namespace steindpp {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on the Legendre polynomial roots; npts >= 1.
const GaussLegendre& gauss_legendre(int npts);

double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       const GaussLegendre& rule);

// Composite rule: [a, b] split into equal panels.
double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, const GaussLegendre& rule);

}  // namespace steindpp
