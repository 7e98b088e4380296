#pragma once

#include <cstdint>
#include <random>

namespace steindpp {

// Master seed plus replication index; distinct pairs derive independent
// streams via a splitmix-style mixer, so replications can run in any order
// (or in parallel) and still reproduce bit-exactly.
struct SeedSpec {
  std::uint64_t master = 0;
  std::uint64_t index = 0;
};

std::uint64_t derive_stream_seed(const SeedSpec& seed);

class Rng {
 public:
  explicit Rng(const SeedSpec& seed) : gen_(derive_stream_seed(seed)) {}

  std::uint64_t raw() { return gen_(); }

  // 53-bit uniform in [0, 1); avoids std::uniform_real_distribution so the
  // stream is identical across standard library implementations.
  double uniform01() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Inverse-CDF normal draw (deterministic given the stream).
  double normal();

 private:
  std::mt19937_64 gen_;
};

}  // namespace steindpp
