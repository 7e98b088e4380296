#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace steindpp {

// Cubic observation window [0, side]^dim.
struct Window {
  int dim = 1;
  double side = 1.0;

  Window() = default;
  Window(int dim_, double side_);
  double volume() const;
};

// Axis-aligned half-open box, prod_j [lo_j, hi_j).
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box() = default;
  Box(std::vector<double> lo_, std::vector<double> hi_);
  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(std::span<const double> pt) const;
  bool disjoint_from(const Box& other) const;
  bool inside_window(const Window& w) const;
};

// Finite realization of a simple point process: flat coordinate storage,
// point i occupies coords[i*dim .. i*dim+dim).
struct PointPattern {
  Window window;
  std::vector<double> coords;

  std::size_t size() const { return window.dim ? coords.size() / window.dim : 0; }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * window.dim, static_cast<std::size_t>(window.dim)};
  }
  void push_back(std::span<const double> pt);

  // Simplicity and containment invariants; throws on violation.
  void validate() const;

  std::size_t count_in(const Box& box) const;
};

}  // namespace steindpp
