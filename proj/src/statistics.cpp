#include "steindpp/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace steindpp {

namespace {

double pair_distance2(std::span<const double> flat, int dim) {
  double s = 0.0;
  for (int q = 0; q < dim; ++q) {
    const double dz = flat[q] - flat[dim + q];
    s += dz * dz;
  }
  return s;
}

double subset_diameter_inf(std::span<const double> flat, int dim, int size) {
  double diam = 0.0;
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      for (int q = 0; q < dim; ++q) {
        diam = std::max(diam, std::abs(flat[i * dim + q] - flat[j * dim + q]));
      }
    }
  }
  return diam;
}

}  // namespace

LocalStatistic LocalStatistic::count(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("LocalStatistic: tau must be > 0");
  LocalStatistic s;
  s.kind_ = Kind::count;
  s.tau_ = tau;
  s.p_max_ = 2;
  s.g_bound_ = 1.0;
  s.name_ = "count";
  return s;
}

LocalStatistic LocalStatistic::pair_indicator(double r, double tau) {
  if (!(tau > 0.0) || !(r > 0.0)) {
    throw std::invalid_argument("LocalStatistic: r and tau must be > 0");
  }
  if (r > tau) throw std::invalid_argument("LocalStatistic: pair radius r must be <= tau");
  LocalStatistic s;
  s.kind_ = Kind::pair_indicator;
  s.tau_ = tau;
  s.p_max_ = 2;
  s.g_bound_ = 1.0;
  s.radius_ = r;
  s.name_ = "pair_indicator";
  return s;
}

LocalStatistic LocalStatistic::pair_weight(double r, double tau) {
  if (!(tau > 0.0) || !(r > 0.0)) {
    throw std::invalid_argument("LocalStatistic: r and tau must be > 0");
  }
  if (r > tau) throw std::invalid_argument("LocalStatistic: pair radius r must be <= tau");
  LocalStatistic s;
  s.kind_ = Kind::pair_weight;
  s.tau_ = tau;
  s.p_max_ = 2;
  s.g_bound_ = 1.0;
  s.radius_ = r;
  s.name_ = "pair_weight";
  return s;
}

LocalStatistic LocalStatistic::custom(Evaluator g, double tau, int p_max, double g_bound,
                                      std::string name) {
  if (!(tau > 0.0)) throw std::invalid_argument("LocalStatistic: tau must be > 0");
  if (p_max < 1) throw std::invalid_argument("LocalStatistic: p_max must be >= 1");
  if (!(g_bound > 0.0)) throw std::invalid_argument("LocalStatistic: g_bound must be > 0");
  if (!g) throw std::invalid_argument("LocalStatistic: evaluator must be callable");
  LocalStatistic s;
  s.kind_ = Kind::custom;
  s.tau_ = tau;
  s.p_max_ = p_max;
  s.g_bound_ = g_bound;
  s.eval_ = std::move(g);
  s.name_ = std::move(name);
  return s;
}

double LocalStatistic::operator()(std::span<const double> flat, int dim, int size) const {
  if (size < 1) return 0.0;
  if (size > p_max_) return 0.0;
  if (size > 1 && subset_diameter_inf(flat, dim, size) > tau_) return 0.0;
  double value = 0.0;
  switch (kind_) {
    case Kind::count:
      value = (size == 1) ? 1.0 : 0.0;
      break;
    case Kind::pair_indicator:
      value = (size == 2 && pair_distance2(flat, dim) <= radius_ * radius_) ? 1.0 : 0.0;
      break;
    case Kind::pair_weight:
      if (size == 2) {
        const double dist = std::sqrt(pair_distance2(flat, dim));
        value = std::max(0.0, 1.0 - dist / radius_);
      }
      break;
    case Kind::custom:
      value = eval_(flat, dim, size);
      break;
  }
  if (std::abs(value) > g_bound_ * (1.0 + 1e-12)) {
    throw std::runtime_error("LocalStatistic: evaluator exceeded its certified bound g_bound");
  }
  return value;
}

namespace {

// Cell grid with cell size tau: subsets with inf-norm diameter <= tau have all
// members within the 3^d cell neighborhood of any one member.
struct CellGrid {
  int dim;
  double cell;
  std::vector<double> origin;
  std::unordered_map<unsigned long long, std::vector<std::size_t>> cells;

  static unsigned long long key_of(const std::vector<int>& c) {
    unsigned long long k = 0;
    for (int v : c) k = k * 2097152ull + static_cast<unsigned long long>(v + 1048576LL);
    return k;
  }

  std::vector<int> cell_of(std::span<const double> pt) const {
    std::vector<int> c(dim);
    for (int q = 0; q < dim; ++q) {
      c[q] = static_cast<int>(std::floor((pt[q] - origin[q]) / cell));
    }
    return c;
  }
};

CellGrid build_grid(const PointPattern& pattern, const std::vector<std::size_t>& pts, double tau) {
  CellGrid grid;
  grid.dim = pattern.window.dim;
  grid.cell = std::max(tau, 1e-12);
  grid.origin.assign(grid.dim, 0.0);
  for (std::size_t i : pts) {
    auto p = pattern.point(i);
    for (int q = 0; q < grid.dim; ++q) grid.origin[q] = std::min(grid.origin[q], p[q]);
  }
  for (std::size_t i : pts) {
    grid.cells[CellGrid::key_of(grid.cell_of(pattern.point(i)))].push_back(i);
  }
  return grid;
}

void neighbor_candidates(const CellGrid& grid, const PointPattern& pattern, std::size_t anchor,
                         std::vector<std::size_t>& out) {
  out.clear();
  const auto center = grid.cell_of(pattern.point(anchor));
  std::vector<int> offset(grid.dim, -1);
  std::vector<int> c(grid.dim);
  while (true) {
    for (int q = 0; q < grid.dim; ++q) c[q] = center[q] + offset[q];
    const auto it = grid.cells.find(CellGrid::key_of(c));
    if (it != grid.cells.end()) {
      for (std::size_t idx : it->second) {
        if (idx > anchor) out.push_back(idx);
      }
    }
    int q = 0;
    while (q < grid.dim && ++offset[q] > 1) offset[q++] = -1;
    if (q == grid.dim) break;
  }
  std::sort(out.begin(), out.end());
}

bool within_tau(const PointPattern& pattern, std::size_t a, std::size_t b, double tau) {
  const int d = pattern.window.dim;
  for (int q = 0; q < d; ++q) {
    if (std::abs(pattern.coords[a * d + q] - pattern.coords[b * d + q]) > tau) return false;
  }
  return true;
}

struct SubsetEnumerator {
  const LocalStatistic& stat;
  const PointPattern& pattern;
  const std::function<void(std::span<const std::size_t>, double)>& visit;
  std::vector<std::size_t> current;
  std::vector<double> flat;

  void emit() {
    const int d = pattern.window.dim;
    flat.resize(current.size() * d);
    for (std::size_t i = 0; i < current.size(); ++i) {
      const auto p = pattern.point(current[i]);
      std::copy(p.begin(), p.end(), flat.begin() + i * d);
    }
    visit(current, stat(flat, d, static_cast<int>(current.size())));
  }

  // Extends the current subset (anchored at its minimal index) with candidates
  // of strictly larger index, keeping pairwise inf-distance <= tau.
  void extend(const std::vector<std::size_t>& candidates, std::size_t from) {
    emit();
    if (static_cast<int>(current.size()) >= stat.p_max()) return;
    for (std::size_t c = from; c < candidates.size(); ++c) {
      const std::size_t cand = candidates[c];
      bool ok = true;
      for (std::size_t member : current) {
        if (!within_tau(pattern, member, cand, stat.tau())) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      current.push_back(cand);
      extend(candidates, c + 1);
      current.pop_back();
    }
  }
};

}  // namespace

void for_each_local_subset(const LocalStatistic& stat, const PointPattern& pattern,
                           const std::optional<Box>& region,
                           const std::function<void(std::span<const std::size_t>, double)>& visit) {
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (!region || region->contains(pattern.point(i))) pts.push_back(i);
  }
  if (pts.empty()) return;
  const CellGrid grid = build_grid(pattern, pts, stat.tau());

  SubsetEnumerator en{stat, pattern, visit, {}, {}};
  std::vector<std::size_t> candidates;
  for (std::size_t anchor : pts) {
    if (stat.p_max() > 1) {
      neighbor_candidates(grid, pattern, anchor, candidates);
    } else {
      candidates.clear();
    }
    en.current.assign(1, anchor);
    en.extend(candidates, 0);
  }
}

double eval_functional(const LocalStatistic& stat, const PointPattern& pattern,
                       const std::optional<Box>& region) {
  double total = 0.0;
  for_each_local_subset(stat, pattern, region,
                        [&](std::span<const std::size_t>, double g) { total += g; });
  return total;
}

IndexVec cube_index_of(std::span<const double> location) {
  IndexVec idx(location.size());
  for (std::size_t q = 0; q < location.size(); ++q) {
    idx[q] = static_cast<int>(std::floor(location[q] + 0.5));
  }
  return idx;
}

std::size_t InteriorIndexSet::count() const {
  if (empty()) return 0;
  std::size_t c = 1;
  for (int q = 0; q < dim; ++q) c *= count_per_dim();
  return c;
}

bool InteriorIndexSet::contains(const IndexVec& idx) const {
  if (static_cast<int>(idx.size()) != dim || empty()) return false;
  for (int v : idx) {
    if (v < lo || v > hi) return false;
  }
  return true;
}

std::vector<IndexVec> InteriorIndexSet::materialize() const {
  std::vector<IndexVec> out;
  if (empty()) return out;
  out.reserve(count());
  IndexVec idx(dim, lo);
  while (true) {
    out.push_back(idx);
    int q = 0;
    while (q < dim && ++idx[q] > hi) idx[q++] = lo;
    if (q == dim) break;
  }
  return out;
}

InteriorIndexSet interior_index_set(int n, double tau, int dim) {
  if (n < 1 || dim < 1 || !(tau >= 0.0)) {
    throw std::invalid_argument("interior_index_set: bad arguments");
  }
  InteriorIndexSet set;
  set.dim = dim;
  // C_i + tau = [i - 1/2 - tau, i + 1/2 + tau) inside [0, n] per coordinate.
  set.lo = static_cast<int>(std::ceil(tau + 0.5));
  set.hi = static_cast<int>(std::floor(n - tau - 0.5));
  return set;
}

void barycenter(const PointPattern& pattern, std::span<const std::size_t> idxs,
                std::span<double> out) {
  const int d = pattern.window.dim;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i : idxs) {
    for (int q = 0; q < d; ++q) out[q] += pattern.coords[i * d + q];
  }
  for (int q = 0; q < d; ++q) out[q] /= static_cast<double>(idxs.size());
}

double restricted_functional(const LocalStatistic& stat, const PointPattern& pattern,
                             const std::function<bool(const IndexVec&)>& cube_filter) {
  const int d = pattern.window.dim;
  std::vector<double> bc(d);
  double total = 0.0;
  for_each_local_subset(stat, pattern, std::nullopt,
                        [&](std::span<const std::size_t> idxs, double g) {
                          if (g == 0.0) return;
                          barycenter(pattern, idxs, bc);
                          if (cube_filter(cube_index_of(bc))) total += g;
                        });
  return total;
}

double restricted_functional(const LocalStatistic& stat, const PointPattern& pattern,
                             const InteriorIndexSet& interior) {
  return restricted_functional(stat, pattern,
                               [&](const IndexVec& idx) { return interior.contains(idx); });
}

std::map<IndexVec, double> per_cube_functional(const LocalStatistic& stat,
                                               const PointPattern& pattern) {
  const int d = pattern.window.dim;
  std::vector<double> bc(d);
  std::map<IndexVec, double> cubes;
  for_each_local_subset(stat, pattern, std::nullopt,
                        [&](std::span<const std::size_t> idxs, double g) {
                          if (g == 0.0) return;
                          barycenter(pattern, idxs, bc);
                          cubes[cube_index_of(bc)] += g;
                        });
  return cubes;
}

std::map<IndexVec, double> cube_variables(const LocalStatistic& stat, const PointPattern& pattern,
                                          const std::vector<IndexVec>& indices,
                                          double mean_per_cube) {
  const auto cubes = per_cube_functional(stat, pattern);
  std::map<IndexVec, double> out;
  for (const auto& idx : indices) {
    const auto it = cubes.find(idx);
    const double f = (it != cubes.end()) ? it->second : 0.0;
    out[idx] = f - mean_per_cube;
  }
  return out;
}

std::pair<int, int> BlockDecomposition::axis_range(int b) const {
  if (b < 1 || b > m) throw std::invalid_argument("BlockDecomposition: block coordinate out of range");
  if (b < m) return {(b - 1) * l + 1, b * l};
  return {(m - 1) * l + 1, (m - 1) * l + r};
}

std::size_t BlockDecomposition::block_count() const {
  std::size_t c = 1;
  for (int q = 0; q < dim; ++q) c *= static_cast<std::size_t>(m);
  return c;
}

std::vector<IndexVec> BlockDecomposition::block_coords() const {
  std::vector<IndexVec> out;
  out.reserve(block_count());
  IndexVec idx(dim, 1);
  while (true) {
    out.push_back(idx);
    int q = 0;
    while (q < dim && ++idx[q] > m) idx[q++] = 1;
    if (q == dim) break;
  }
  return out;
}

std::vector<IndexVec> BlockDecomposition::block_members(const IndexVec& block) const {
  if (static_cast<int>(block.size()) != dim) {
    throw std::invalid_argument("BlockDecomposition: block index dimension mismatch");
  }
  std::vector<std::pair<int, int>> ranges(dim);
  for (int q = 0; q < dim; ++q) ranges[q] = axis_range(block[q]);
  std::vector<IndexVec> out;
  IndexVec idx(dim);
  for (int q = 0; q < dim; ++q) idx[q] = ranges[q].first;
  while (true) {
    out.push_back(idx);
    int q = 0;
    while (q < dim && ++idx[q] > ranges[q].second) idx[q] = ranges[q].first, ++q;
    if (q == dim) break;
  }
  return out;
}

BlockDecomposition block_decompose(int n, int l, int dim) {
  if (n < 1 || dim < 1) throw std::invalid_argument("block_decompose: n and dim must be >= 1");
  if (l < 1 || l > n) throw std::invalid_argument("block_decompose: l must satisfy 1 <= l <= n");
  BlockDecomposition d;
  d.n = n;
  d.l = l;
  d.dim = dim;
  d.m = (n + l - 1) / l;  // ceil(n / l)
  d.r = n - (d.m - 1) * l;
  return d;
}

BlockSums block_sums(const BlockDecomposition& decomp,
                     const std::map<IndexVec, double>& cube_vars) {
  BlockSums sums;
  for (const auto& block : decomp.block_coords()) {
    double xi = 0.0;
    for (const auto& member : decomp.block_members(block)) {
      const auto it = cube_vars.find(member);
      if (it == cube_vars.end()) {
        throw std::invalid_argument("block_sums: cube variable missing for a lattice index");
      }
      xi += it->second;
    }
    sums.xi[block] = xi;
    sums.s_n += xi;
  }
  return sums;
}

double standardized_sum(double s_n, double sigma_n) {
  if (!(sigma_n > 0.0)) throw std::invalid_argument("standardized_sum: sigma must be > 0");
  return s_n / sigma_n;
}

}  // namespace steindpp
