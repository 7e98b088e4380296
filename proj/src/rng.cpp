#include "steindpp/rng.hpp"

#include "steindpp/normal.hpp"

namespace steindpp {

namespace {
std::uint64_t splitmix64_round(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t derive_stream_seed(const SeedSpec& seed) {
  std::uint64_t z = splitmix64_round(seed.master);
  z ^= splitmix64_round(seed.index + 0x632BE59BD9B4E019ull);
  return splitmix64_round(z);
}

double Rng::normal() {
  // uniform01 can return exactly 0; shift into the open interval.
  double u = uniform01();
  if (u <= 0.0) u = 0x1.0p-54;
  return normal_quantile(u);
}

}  // namespace steindpp
