#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace piuniv {

// Finite point set in R^d with sampling provenance. Coordinates are stored
// row-major (point i occupies xs[i*d .. i*d+d)).
struct PointCloud {
  int d = 0;
  std::vector<double> xs;
  std::uint64_t seed = 0;
  std::string model = "fixture";
  std::string process = "fixture";

  std::size_t size() const { return d > 0 ? xs.size() / d : 0; }
  std::span<const double> point(std::size_t i) const {
    return {xs.data() + i * static_cast<std::size_t>(d),
            static_cast<std::size_t>(d)};
  }
  const double* p(std::size_t i) const {
    return xs.data() + i * static_cast<std::size_t>(d);
  }
};

double dist(const double* a, const double* b, int d);
double dist2(const double* a, const double* b, int d);

// periodic (unit torus) metric, used for boundary-free counting checks
double torus_dist(const double* a, const double* b, int d);

}  // namespace piuniv
