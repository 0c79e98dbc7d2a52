#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace piuniv {

// Deterministic, splittable generator. Stream derivation: the four state
// words of a xoshiro256** instance are produced by SplitMix64 seeded with
// splitmix64(seed) ^ splitmix64(stream). Given (seed, stream) the whole
// draw sequence is reproducible across platforms; parallel trials use
// disjoint streams.
class Rng {
 public:
  Rng() : Rng(0, 0) {}
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // 53-bit mantissa uniform in [0,1)
  double uniform01();
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  // unbiased integer in [0, n), n >= 1
  std::uint64_t uniform_index(std::uint64_t n);

  double normal();  // standard normal, Box-Muller (pair cached)
  std::uint64_t poisson(double mean);
  double gamma(double shape);  // unit scale
  double beta(double a, double b);
  double exponential();

  // uniform direction on S^{d-1} in R^d
  void unit_vector(int d, double* out);

  static std::uint64_t splitmix64(std::uint64_t& state);

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace piuniv
