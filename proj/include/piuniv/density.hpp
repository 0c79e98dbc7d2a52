#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "piuniv/points.hpp"
#include "piuniv/rng.hpp"

namespace piuniv {

enum class DensityKind {
  uniform_cube,
  piecewise_constant,
  annulus_beta,
  gaussian,
  radial_exp,
  power_law,
};

enum class GoodType { I, II, III };

enum class Process { binomial, poisson };

// Evaluable probability density with a seeded sampler. The type tag is
// declared, not verified (Types II/III admissibility is not algorithmic).
struct DensityModel {
  DensityKind kind = DensityKind::uniform_cube;
  int d = 2;
  GoodType type_tag = GoodType::I;

  // piecewise_constant: m^d cells over [0,1]^d, weights sum to 1
  int grid_m = 1;
  std::vector<double> weights;

  // annulus_beta (d = 2)
  double inner = 0.3, outer = 0.7, shape = 2.0;

  // gaussian: covariance (row-major d*d); empty = identity
  std::vector<double> covariance;

  // radial_exp / power_law exponent
  double alpha = 1.0;

  std::string name() const;

  static DensityModel uniform(int d);
  static DensityModel piecewise(int d, int m, std::vector<double> weights);
  static DensityModel annulus(double inner, double outer, double shape);
  static DensityModel gaussian_iso(int d);
  static DensityModel radial(int d, double alpha);
  static DensityModel power(int d, double alpha);
};

double eval(const DensityModel& model, std::span<const double> x);

PointCloud sample_binomial(const DensityModel& model, std::size_t n,
                           std::uint64_t seed);
PointCloud sample_poisson(const DensityModel& model, double nu,
                          std::uint64_t seed);

// r_max as a function of the process, size and density type. Policies:
// Poisson Types I/II: Lambda_max = nu^{1/(dk+2)}; Type III: r_max = 1/ln(n);
// binomial: Lambda_max = n^{1/(4(k+2))}. r_max = (Lambda_max/n)^{1/d}.
double rmax_policy(Process process, double n_or_nu, int d, int k,
                   GoodType type_tag);

// the Poisson-style policy regardless of process; used by the statistical
// harness where the truncation must cover the thermodynamic regime
double rmax_thermodynamic(double n_or_nu, int d, int k, GoodType type_tag);

// internal: draw one point from the model into out[d]
void sample_point(const DensityModel& model, Rng& rng, double* out);

}  // namespace piuniv
