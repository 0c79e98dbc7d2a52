#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "piuniv/complex.hpp"

namespace piuniv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr std::int64_t kNone = -1;

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInf;
  std::uint32_t birth_simplex = 0;  // order index in the reduced complex
  std::int64_t death_simplex = kNone;
  double pi() const { return death / birth; }
  bool finite() const { return death_simplex != kNone; }
};

// Sign of every simplex plus the positive<->negative matching of the
// reduction. partner[i] = kNone for unpaired simplices; the order-first
// vertex is the one simplex paired with the (virtual) empty simplex.
struct PairingTable {
  std::vector<std::uint8_t> positive;
  std::vector<std::int64_t> partner;
};

struct Diagrams {
  int max_dim = 0;
  // pairs with birth < death plus infinite bars; zero-persistence pairs are
  // dropped here but remain visible through the PairingTable
  std::vector<PersistencePair> pairs;

  std::vector<PersistencePair> in_dim(int k) const;
};

struct Reduction {
  Diagrams dgms;
  PairingTable pairing;
};

Reduction reduce(const FilteredComplex& fc);

// reduced Betti number of the full complex (Z/2 ranks)
long reduced_betti(const FilteredComplex& fc, int j);

// multiset of death/birth ratios of finite degree-k pairs with death <= r_max
struct PiMeasure {
  int k = 1;
  double r_max = kInf;
  std::vector<double> pi;  // sorted ascending
  std::size_t total = 0;
};

PiMeasure pi_measure(const Diagrams& dgms, int k, double r_max);
std::size_t pi_count_alpha(const PiMeasure& m, double alpha);

struct StepCdf {
  std::vector<double> xs;  // sorted support
  std::size_t total = 0;
  double operator()(double x) const;  // right-continuous
};
StepCdf empirical_cdf(const PiMeasure& m);  // throws on empty measure

// number of alpha-persistent k-cycles; infinite bars count unless a finite
// death cutoff is given
std::size_t alpha_persistent_count(const Diagrams& dgms, int k, double alpha,
                                   double r_max = kInf);

struct StabilityReport {
  long delta = 0;
  int dim_sigma = 0;
  bool cutoff_active = false;
  bool pass = false;
};
// delta = Pi_k(alpha; fc ∪ sigma) - Pi_k(alpha; fc) via two full reductions
StabilityReport stability_probe(const FilteredComplex& fc, const Simplex& sigma,
                                double value, double alpha, int k,
                                double r_max = kInf);

struct CascadeReport {
  bool sigma_negative = false;
  std::size_t cascade_size = 0;
  bool order_a = false;   // w(sigma) <= d_1 <= ... <= d_m
  bool kills_b = false;   // sigma kills the largest-birth class
  bool shift_c = false;   // killer shift along the cascade
  bool nested = false;    // (b_1,d_1) ⊂ ... ⊂ (b_m,d_m)
  bool pass = false;
};
CascadeReport cascade_verify(const FilteredComplex& fc, const Simplex& sigma,
                             double value);

}  // namespace piuniv
