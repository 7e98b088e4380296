#include "steindpp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace steindpp {

Window::Window(int dim_, double side_) : dim(dim_), side(side_) {
  if (dim < 1) throw std::invalid_argument("Window: dim must be >= 1");
  if (!(side > 0.0)) throw std::invalid_argument("Window: side must be > 0");
}

double Window::volume() const { return std::pow(side, dim); }

Box::Box(std::vector<double> lo_, std::vector<double> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("Box: bad bounds");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw std::invalid_argument("Box: lo must be < hi in every dimension");
  }
}

bool Box::contains(std::span<const double> pt) const {
  if (pt.size() != lo.size()) throw std::invalid_argument("Box::contains: dimension mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (pt[i] < lo[i] || pt[i] >= hi[i]) return false;
  }
  return true;
}

bool Box::disjoint_from(const Box& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("Box::disjoint_from: dimension mismatch");
  for (int i = 0; i < dim(); ++i) {
    if (hi[i] <= other.lo[i] || other.hi[i] <= lo[i]) return true;
  }
  return false;
}

bool Box::inside_window(const Window& w) const {
  if (dim() != w.dim) return false;
  for (int i = 0; i < dim(); ++i) {
    if (lo[i] < 0.0 || hi[i] > w.side) return false;
  }
  return true;
}

void PointPattern::push_back(std::span<const double> pt) {
  if (static_cast<int>(pt.size()) != window.dim) {
    throw std::invalid_argument("PointPattern::push_back: dimension mismatch");
  }
  coords.insert(coords.end(), pt.begin(), pt.end());
}

void PointPattern::validate() const {
  const int d = window.dim;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (int q = 0; q < d; ++q) {
      const double c = coords[i * d + q];
      if (!(c >= 0.0 && c <= window.side)) {
        throw std::runtime_error("PointPattern: point outside window");
      }
    }
  }
  // Exact-duplicate detection via sorted index comparison.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(coords.begin() + a * d, coords.begin() + (a + 1) * d,
                                        coords.begin() + b * d, coords.begin() + (b + 1) * d);
  });
  for (std::size_t i = 1; i < n; ++i) {
    if (std::equal(coords.begin() + order[i - 1] * d, coords.begin() + (order[i - 1] + 1) * d,
                   coords.begin() + order[i] * d)) {
      throw std::runtime_error("PointPattern: duplicate point (process must be simple)");
    }
  }
}

std::size_t PointPattern::count_in(const Box& box) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (box.contains(point(i))) ++c;
  }
  return c;
}

}  // namespace steindpp
