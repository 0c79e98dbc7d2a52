#include "piuniv/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace piuniv {

double dist2(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double dist(const double* a, const double* b, int d) {
  return std::sqrt(dist2(a, b, d));
}

double torus_dist(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    double t = std::fabs(a[i] - b[i]);
    if (t > 0.5) t = 1.0 - t;
    s += t * t;
  }
  return std::sqrt(s);
}

namespace geom {

LensSpec make_lens(std::span<const double> x1, std::span<const double> x2) {
  LensSpec lens;
  lens.x1.assign(x1.begin(), x1.end());
  lens.x2.assign(x2.begin(), x2.end());
  lens.rho = dist(lens.x1.data(), lens.x2.data(), static_cast<int>(x1.size()));
  lens.forbidden_radius = (1.0 - std::sqrt(3.0) / 2.0) * lens.rho;
  return lens;
}

bool in_forbidden_region(std::span<const double> y, const LensSpec& lens) {
  int d = static_cast<int>(y.size());
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    double mid = 0.5 * (lens.x1[i] + lens.x2[i]);
    double t = y[i] - mid;
    s += t * t;
  }
  return std::sqrt(s) <= lens.forbidden_radius;
}

// Solves for the circumcenter c = p0 + sum a_i (p_i - p0) in the affine hull
// via the Gram system G a = b, G_il = <p_i-p0, p_l-p0>, b_i = |p_i-p0|^2 / 2.
// Degeneracy is condition-based on the singular values of the edge matrix.
std::optional<Sphere> circumsphere(const std::vector<const double*>& pts,
                                   int d) {
  const int m = static_cast<int>(pts.size());
  if (m < 1 || m > d + 1) return std::nullopt;
  Sphere out;
  out.center.assign(pts[0], pts[0] + d);
  if (m == 1) {
    out.radius = 0.0;
    return out;
  }
  Eigen::MatrixXd E(d, m - 1);
  double scale = 0.0;
  for (int i = 1; i < m; ++i) {
    for (int j = 0; j < d; ++j) E(j, i - 1) = pts[i][j] - pts[0][j];
    scale = std::max(scale, E.col(i - 1).norm());
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(E, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  if (svd.singularValues()(m - 2) <= 1e-9 * scale) return std::nullopt;
  Eigen::VectorXd b(m - 1);
  for (int i = 1; i < m; ++i) b(i - 1) = 0.5 * E.col(i - 1).squaredNorm();
  // normal equations (E^T E) a = b solved through the SVD: G = V S^2 V^T
  const auto& S = svd.singularValues();
  const auto& V = svd.matrixV();
  Eigen::VectorXd w = V.transpose() * b;
  for (int i = 0; i < m - 1; ++i) w(i) /= S(i) * S(i);
  Eigen::VectorXd a = V * w;
  Eigen::VectorXd c = E * a;
  double r2 = c.squaredNorm();
  for (int j = 0; j < d; ++j) out.center[j] += c(j);
  out.radius = std::sqrt(r2);
  return out;
}

std::optional<Sphere> circumsphere(const PointCloud& cloud,
                                   std::span<const std::uint32_t> idx) {
  std::vector<const double*> pts;
  pts.reserve(idx.size());
  for (auto i : idx) pts.push_back(cloud.p(i));
  return circumsphere(pts, cloud.d);
}

namespace {

constexpr int kMaxM = 16;

// circumcenter-in-affine-hull without Eigen, for the MEB hot path.
// Returns false when the Gram system is numerically singular.
bool circum_in_hull(const double* const* pts, int m, int d, double* center,
                    double* radius) {
  if (m == 1) {
    std::memcpy(center, pts[0], sizeof(double) * d);
    *radius = 0.0;
    return true;
  }
  const int k = m - 1;
  double G[kMaxM][kMaxM + 1];
  double scale = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int l = 0; l <= i; ++l) {
      double s = 0.0;
      for (int j = 0; j < d; ++j)
        s += (pts[i + 1][j] - pts[0][j]) * (pts[l + 1][j] - pts[0][j]);
      G[i][l] = G[l][i] = s;
    }
    G[i][k] = 0.5 * G[i][i];
    scale = std::max(scale, G[i][i]);
  }
  // Gaussian elimination with partial pivoting
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::fabs(G[r][col]) > std::fabs(G[piv][col])) piv = r;
    if (std::fabs(G[piv][col]) <= 1e-18 * scale) return false;
    if (piv != col)
      for (int c = col; c <= k; ++c) std::swap(G[piv][c], G[col][c]);
    for (int r = col + 1; r < k; ++r) {
      double f = G[r][col] / G[col][col];
      for (int c = col; c <= k; ++c) G[r][c] -= f * G[col][c];
    }
  }
  double a[kMaxM];
  for (int r = k - 1; r >= 0; --r) {
    double s = G[r][k];
    for (int c = r + 1; c < k; ++c) s -= G[r][c] * a[c];
    a[r] = s / G[r][r];
  }
  double r2 = 0.0;
  for (int j = 0; j < d; ++j) {
    double cj = 0.0;
    for (int i = 0; i < k; ++i) cj += a[i] * (pts[i + 1][j] - pts[0][j]);
    center[j] = pts[0][j] + cj;
    r2 += cj * cj;
  }
  *radius = std::sqrt(r2);
  return true;
}

}  // namespace

// Exhaustive search over support subsets; exact for the small simplices
// (m <= d+2 vertices) this library builds.
Sphere min_enclosing_ball(const std::vector<const double*>& pts, int d) {
  const int m = static_cast<int>(pts.size());
  if (m == 0) throw std::invalid_argument("min_enclosing_ball: empty input");
  Sphere best;
  best.center.resize(d);
  best.radius = std::numeric_limits<double>::infinity();
  double center[kMaxM * 4];
  const double* sub[kMaxM];
  const int max_support = std::min(m, d + 1);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    int cnt = __builtin_popcount(mask);
    if (cnt > max_support) continue;
    int t = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) sub[t++] = pts[i];
    double radius;
    if (!circum_in_hull(sub, cnt, d, center, &radius)) continue;
    if (radius >= best.radius) continue;
    bool covers = true;
    const double r2 = radius * radius * (1.0 + 1e-12) + 1e-300;
    for (int i = 0; i < m && covers; ++i)
      covers = dist2(pts[i], center, d) <= r2;
    if (covers) {
      best.radius = radius;
      std::memcpy(best.center.data(), center, sizeof(double) * d);
    }
  }
  return best;
}

Sphere min_enclosing_ball(const PointCloud& cloud,
                          std::span<const std::uint32_t> idx) {
  std::vector<const double*> pts;
  pts.reserve(idx.size());
  for (auto i : idx) pts.push_back(cloud.p(i));
  return min_enclosing_ball(pts, cloud.d);
}

double meb_radius(const double* const* pts, int m, int d) {
  if (m == 2) return 0.5 * dist(pts[0], pts[1], d);
  double center[kMaxM * 4];
  double best = std::numeric_limits<double>::infinity();
  const double* sub[kMaxM];
  const int max_support = std::min(m, d + 1);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    int cnt = __builtin_popcount(mask);
    if (cnt < 2 || cnt > max_support) continue;
    int t = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) sub[t++] = pts[i];
    double radius;
    if (!circum_in_hull(sub, cnt, d, center, &radius)) continue;
    if (radius >= best) continue;
    bool covers = true;
    const double r2 = radius * radius * (1.0 + 1e-12) + 1e-300;
    for (int i = 0; i < m && covers; ++i)
      covers = dist2(pts[i], center, d) <= r2;
    if (covers) best = radius;
  }
  return best;
}

std::optional<bool> center_in_open_simplex(
    const Sphere& s, const std::vector<const double*>& pts, int d) {
  const int m = static_cast<int>(pts.size());
  if (m < 2) return m == 1;  // a single point: center is the point itself
  Eigen::MatrixXd E(d, m - 1);
  double scale = 0.0;
  for (int i = 1; i < m; ++i) {
    for (int j = 0; j < d; ++j) E(j, i - 1) = pts[i][j] - pts[0][j];
    scale = std::max(scale, E.col(i - 1).norm());
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(E, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  if (svd.singularValues()(m - 2) <= 1e-9 * scale) return std::nullopt;
  Eigen::VectorXd rhs(d);
  for (int j = 0; j < d; ++j) rhs(j) = s.center[j] - pts[0][j];
  Eigen::VectorXd a = svd.solve(rhs);
  double lam0 = 1.0;
  constexpr double tol = 1e-12;
  for (int i = 0; i < m - 1; ++i) {
    if (a(i) <= tol) return false;
    lam0 -= a(i);
  }
  return lam0 > tol;
}

double ball_volume(int d) {
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double sphere_surface(int j) {
  return 2.0 * std::pow(M_PI, 0.5 * (j + 1)) / std::tgamma(0.5 * (j + 1));
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double fa, double b, double fb, double fm, double whole,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double tol = std::max(std::fabs(whole), 1e-12) * rel_tol;
  return adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, 48);
}

double lens_volume(int d) {
  if (d == 1) return 1.0;
  if (d == 2) return 2.0 * M_PI / 3.0 - std::sqrt(3.0) / 2.0;
  if (d == 3) return 5.0 * M_PI / 12.0;
  // two spherical caps of height 1/2: 2 * omega_{d-1} * ∫_{1/2}^1 (1-t^2)^{(d-1)/2} dt
  double w = ball_volume(d - 1);
  double e = 0.5 * (d - 1);
  return 2.0 * w *
         integrate([e](double t) { return std::pow(1.0 - t * t, e); }, 0.5,
                   1.0, 1e-8);
}

}  // namespace geom
}  // namespace piuniv
