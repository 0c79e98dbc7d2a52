#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "piuniv/points.hpp"

namespace piuniv::geom {

struct Sphere {
  std::vector<double> center;
  double radius = 0.0;
};

// Lens I(x1,x2) = B_rho(x1) ∩ B_rho(x2) with rho = |x1-x2|, and the central
// forbidden ball of radius (1 - sqrt(3)/2) * rho.
struct LensSpec {
  std::vector<double> x1, x2;
  double rho = 0.0;
  double forbidden_radius = 0.0;
};

LensSpec make_lens(std::span<const double> x1, std::span<const double> x2);

// Unique sphere through m = |pts| points inside their affine hull (the
// (m-2)-sphere of the paper). nullopt when the points are affinely dependent
// beyond the condition threshold 1e-9 * scale.
std::optional<Sphere> circumsphere(const std::vector<const double*>& pts,
                                   int d);
std::optional<Sphere> circumsphere(const PointCloud& cloud,
                                   std::span<const std::uint32_t> idx);

Sphere min_enclosing_ball(const std::vector<const double*>& pts, int d);
Sphere min_enclosing_ball(const PointCloud& cloud,
                          std::span<const std::uint32_t> idx);
// radius-only fast path used by the complex builders
double meb_radius(const double* const* pts, int m, int d);

// true iff the barycentric coordinates of s.center w.r.t. pts are all
// > 1e-12 (open-simplex membership). nullopt on degeneracy.
std::optional<bool> center_in_open_simplex(const Sphere& s,
                                           const std::vector<const double*>& pts,
                                           int d);

bool in_forbidden_region(std::span<const double> y, const LensSpec& lens);

double ball_volume(int d);    // omega_d
double lens_volume(int d);    // kappa_d = vol(B_1(0) ∩ B_1(e1))
double sphere_surface(int j); // s_j, surface measure of S^j in R^{j+1}

// adaptive Simpson on [a,b] with relative tolerance
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol);

}  // namespace piuniv::geom
