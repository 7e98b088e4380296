#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steindpp/geometry.hpp"

namespace steindpp {

// Bounded set function g with finite interaction range tau (inf-norm diameter)
// and maximum subset size p_max. The wrapper enforces
//   g(S) = 0 when diam_inf(S) > tau or |S| > p_max, and |g(S)| <= g_bound.
// Registered kinds:
//   count           g(S) = 1 iff |S| = 1
//   pair_indicator  g(S) = 1 iff |S| = 2 and |x-y|_2 <= r
//   pair_weight     g(S) = max(0, 1 - |x-y|_2 / r) on pairs
// plus an arbitrary registered evaluator hook.
class LocalStatistic {
 public:
  enum class Kind { count, pair_indicator, pair_weight, custom };

  // Raw evaluator: flat coordinates of the subset, dimension, subset size.
  using Evaluator = std::function<double(std::span<const double>, int, int)>;

  static LocalStatistic count(double tau);
  static LocalStatistic pair_indicator(double r, double tau);
  static LocalStatistic pair_weight(double r, double tau);
  static LocalStatistic custom(Evaluator g, double tau, int p_max, double g_bound,
                               std::string name = "custom");

  // Wrapper-enforced evaluation of g on a subset.
  double operator()(std::span<const double> flat, int dim, int size) const;

  Kind kind() const { return kind_; }
  double tau() const { return tau_; }
  int p_max() const { return p_max_; }
  double g_bound() const { return g_bound_; }
  double radius() const { return radius_; }  // r parameter of the pair kinds
  const std::string& name() const { return name_; }

 private:
  LocalStatistic() = default;
  Kind kind_ = Kind::count;
  double tau_ = 1.0;
  int p_max_ = 2;
  double g_bound_ = 1.0;
  double radius_ = 0.0;
  Evaluator eval_;
  std::string name_;
};

using IndexVec = std::vector<int>;

// f(Y) = sum of g(S) over subsets S of the pattern (optionally restricted to
// a region) with |S| <= p_max and diam_inf(S) <= tau. Neighbor candidates come
// from a cell grid with cell size tau.
double eval_functional(const LocalStatistic& stat, const PointPattern& pattern,
                       const std::optional<Box>& region = std::nullopt);

// Enumerates every subset the functional ranges over and invokes
// visit(point_indices, g_value) once per subset (including zero g values for
// subsets within range). Shared core of the functional evaluators.
void for_each_local_subset(const LocalStatistic& stat, const PointPattern& pattern,
                           const std::optional<Box>& region,
                           const std::function<void(std::span<const std::size_t>, double)>& visit);

// Unit cube centered at integer vector i: prod_j [i_j - 1/2, i_j + 1/2).
// Cube index of a location (barycenters use the same rule).
IndexVec cube_index_of(std::span<const double> location);

// Interior index product set {lo..hi}^d of cubes whose tau-dilation stays in
// [0, n]^d. Empty when n <= 2 (tau + 1/2).
struct InteriorIndexSet {
  int lo = 0, hi = -1;
  int dim = 1;

  bool empty() const { return hi < lo; }
  std::size_t count_per_dim() const { return empty() ? 0 : static_cast<std::size_t>(hi - lo + 1); }
  std::size_t count() const;
  bool contains(const IndexVec& idx) const;
  std::vector<IndexVec> materialize() const;
};

InteriorIndexSet interior_index_set(int n, double tau, int dim);

// Barycenter (coordinate mean) of a subset, written into out.
void barycenter(const PointPattern& pattern, std::span<const std::size_t> idxs,
                std::span<double> out);

// Sum of g(S) over subsets whose barycenter lies in one of the given cubes.
double restricted_functional(const LocalStatistic& stat, const PointPattern& pattern,
                             const InteriorIndexSet& interior);
double restricted_functional(const LocalStatistic& stat, const PointPattern& pattern,
                             const std::function<bool(const IndexVec&)>& cube_filter);

// Per-cube functional values f_{C_i}: subsets grouped by barycenter cube.
// Only cubes with a nonzero accumulated value appear.
std::map<IndexVec, double> per_cube_functional(const LocalStatistic& stat,
                                               const PointPattern& pattern);

// Centered cube variables Y_i = f_{C_i} - mean_per_cube for the requested
// indices (cubes with no contribution yield -mean_per_cube).
std::map<IndexVec, double> cube_variables(const LocalStatistic& stat, const PointPattern& pattern,
                                          const std::vector<IndexVec>& indices,
                                          double mean_per_cube);

// Partition of the index cube {1..n}^d into m^d blocks of side <= l via the
// unique decomposition n = (m-1) l + r with 1 <= r <= l. Main blocks (block
// coordinate < m) have side l; the trailing coordinate has side r.
struct BlockDecomposition {
  int n = 1, l = 1, m = 1, r = 1;
  int dim = 1;

  // Inclusive index range covered by block coordinate b (1-based) on one axis.
  std::pair<int, int> axis_range(int b) const;
  std::size_t block_count() const;
  std::vector<IndexVec> block_coords() const;            // all i in [m]^d
  std::vector<IndexVec> block_members(const IndexVec& block) const;
};

BlockDecomposition block_decompose(int n, int l, int dim);

struct BlockSums {
  std::map<IndexVec, double> xi;  // per-block sums
  double s_n = 0.0;               // total
};

// Block sums of cube variables; every index in {1..n}^d must be present.
BlockSums block_sums(const BlockDecomposition& decomp,
                     const std::map<IndexVec, double>& cube_vars);

// Standardized total W_n = s_n / sigma_n; requires sigma_n > 0.
double standardized_sum(double s_n, double sigma_n);

}  // namespace steindpp
