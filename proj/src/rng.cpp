#include "piuniv/rng.hpp"

#include <cmath>

namespace piuniv {

std::uint64_t Rng::splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t a = seed, b = stream + 0x6a09e667f3bcc909ULL;
  std::uint64_t mix = splitmix64(a) ^ splitmix64(b);
  for (auto& w : s_) w = splitmix64(mix);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::next_u64() {
  // xoshiro256**
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform01(), u2 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return r * std::cos(a);
}

double Rng::exponential() {
  double u = uniform01();
  while (u <= 0.0) u = uniform01();
  return -std::log(u);
}

std::uint64_t Rng::poisson(double mean) {
  // sum of Exp(1) arrivals; exact and loop-deterministic per stream
  std::uint64_t n = 0;
  double acc = exponential();
  while (acc <= mean) {
    ++n;
    acc += exponential();
  }
  return n;
}

double Rng::gamma(double shape) {
  // Marsaglia-Tsang; shape < 1 boosted via U^{1/shape}
  if (shape < 1.0) {
    double u = uniform01();
    while (u <= 0.0) u = uniform01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v;
  }
}

double Rng::beta(double a, double b) {
  double x = gamma(a);
  double y = gamma(b);
  return x / (x + y);
}

void Rng::unit_vector(int d, double* out) {
  for (;;) {
    double norm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      out[i] = normal();
      norm2 += out[i] * out[i];
    }
    if (norm2 > 1e-300) {
      double inv = 1.0 / std::sqrt(norm2);
      for (int i = 0; i < d; ++i) out[i] *= inv;
      return;
    }
  }
}

}  // namespace piuniv
