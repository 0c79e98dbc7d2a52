#include "piuniv/density.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "piuniv/geometry.hpp"

namespace piuniv {

std::string DensityModel::name() const {
  char buf[96];
  switch (kind) {
    case DensityKind::uniform_cube:
      std::snprintf(buf, sizeof buf, "uniform_cube_d%d", d);
      break;
    case DensityKind::piecewise_constant:
      std::snprintf(buf, sizeof buf, "piecewise_m%d_d%d", grid_m, d);
      break;
    case DensityKind::annulus_beta:
      std::snprintf(buf, sizeof buf, "annulus_%g_%g_s%g", inner, outer, shape);
      break;
    case DensityKind::gaussian:
      std::snprintf(buf, sizeof buf, "gaussian_d%d", d);
      break;
    case DensityKind::radial_exp:
      std::snprintf(buf, sizeof buf, "radial_exp_a%g", alpha);
      break;
    case DensityKind::power_law:
      std::snprintf(buf, sizeof buf, "power_law_a%g", alpha);
      break;
  }
  return buf;
}

DensityModel DensityModel::uniform(int d) {
  DensityModel m;
  m.kind = DensityKind::uniform_cube;
  m.d = d;
  m.type_tag = GoodType::I;
  return m;
}

DensityModel DensityModel::piecewise(int d, int mm, std::vector<double> w) {
  DensityModel m;
  m.kind = DensityKind::piecewise_constant;
  m.d = d;
  m.grid_m = mm;
  m.weights = std::move(w);
  double s = 0.0;
  bool has_zero = false;
  for (double c : m.weights) {
    if (c < 0.0) throw std::invalid_argument("piecewise weights must be >= 0");
    if (c == 0.0) has_zero = true;
    s += c;
  }
  std::size_t cells = 1;
  for (int i = 0; i < d; ++i) cells *= static_cast<std::size_t>(mm);
  if (m.weights.size() != cells || std::fabs(s - 1.0) > 1e-9)
    throw std::invalid_argument("piecewise weights must sum to 1 over m^d cells");
  m.type_tag = has_zero ? GoodType::II : GoodType::I;
  return m;
}

DensityModel DensityModel::annulus(double inner, double outer, double shape) {
  DensityModel m;
  m.kind = DensityKind::annulus_beta;
  m.d = 2;
  m.inner = inner;
  m.outer = outer;
  m.shape = shape;
  m.type_tag = shape > 1.0 ? GoodType::II : GoodType::I;
  if (!(0.0 <= inner && inner < outer) || shape <= 0.0)
    throw std::invalid_argument("annulus_beta requires 0 <= inner < outer, shape > 0");
  return m;
}

DensityModel DensityModel::gaussian_iso(int d) {
  DensityModel m;
  m.kind = DensityKind::gaussian;
  m.d = d;
  m.type_tag = GoodType::III;
  return m;
}

DensityModel DensityModel::radial(int d, double alpha) {
  DensityModel m;
  m.kind = DensityKind::radial_exp;
  m.d = d;
  m.alpha = alpha;
  m.type_tag = GoodType::III;
  if (alpha <= 0.0) throw std::invalid_argument("radial_exp requires alpha > 0");
  return m;
}

DensityModel DensityModel::power(int d, double alpha) {
  DensityModel m;
  m.kind = DensityKind::power_law;
  m.d = d;
  m.alpha = alpha;
  m.type_tag = GoodType::III;
  if (alpha <= d)
    throw std::invalid_argument("power_law requires alpha > d");
  return m;
}

namespace {

double beta_pdf(double t, double s) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double logb = std::lgamma(2.0 * s) - 2.0 * std::lgamma(s);
  return std::exp(logb + (s - 1.0) * (std::log(t) + std::log1p(-t)));
}

// normalization of f(x) = c * exp(-|x|^alpha)
double radial_exp_norm(int d, double alpha) {
  double log_int = std::lgamma(static_cast<double>(d) / alpha) - std::log(alpha);
  return 1.0 / (geom::sphere_surface(d - 1) * std::exp(log_int));
}

// ∫_0^∞ r^{d-1}/(1+r^alpha) dr = pi / (alpha sin(pi d / alpha))
double power_law_norm(int d, double alpha) {
  double integral = M_PI / (alpha * std::sin(M_PI * d / alpha));
  return 1.0 / (geom::sphere_surface(d - 1) * integral);
}

void gaussian_chol(const DensityModel& m, std::vector<double>& L) {
  int d = m.d;
  L.assign(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> C = m.covariance;
  if (C.empty()) {
    C.assign(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) C[i * d + i] = 1.0;
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = C[i * d + j];
      for (int k = 0; k < j; ++k) s -= L[i * d + k] * L[j * d + k];
      if (i == j) {
        if (s <= 0.0) throw std::invalid_argument("gaussian covariance not SPD");
        L[i * d + i] = std::sqrt(s);
      } else {
        L[i * d + j] = s / L[j * d + j];
      }
    }
  }
}

}  // namespace

double eval(const DensityModel& model, std::span<const double> x) {
  const int d = model.d;
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument("eval: dimension mismatch");
  switch (model.kind) {
    case DensityKind::uniform_cube: {
      for (double xi : x)
        if (xi < 0.0 || xi > 1.0) return 0.0;
      return 1.0;
    }
    case DensityKind::piecewise_constant: {
      std::size_t cell = 0, stride = 1;
      for (int i = 0; i < d; ++i) {
        if (x[i] < 0.0 || x[i] > 1.0) return 0.0;
        int c = std::min(model.grid_m - 1,
                         static_cast<int>(x[i] * model.grid_m));
        cell += stride * static_cast<std::size_t>(c);
        stride *= static_cast<std::size_t>(model.grid_m);
      }
      return model.weights[cell] * static_cast<double>(model.weights.size());
    }
    case DensityKind::annulus_beta: {
      double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
      if (r <= model.inner || r >= model.outer || r == 0.0) return 0.0;
      double t = (r - model.inner) / (model.outer - model.inner);
      double radial = beta_pdf(t, model.shape) / (model.outer - model.inner);
      return radial / (2.0 * M_PI * r);
    }
    case DensityKind::gaussian: {
      std::vector<double> L;
      gaussian_chol(model, L);
      // solve L y = x, density = exp(-|y|^2/2) / ((2 pi)^{d/2} det L)
      std::vector<double> y(d);
      double logdet = 0.0;
      for (int i = 0; i < d; ++i) {
        double s = x[i];
        for (int j = 0; j < i; ++j) s -= L[i * d + j] * y[j];
        y[i] = s / L[i * d + i];
        logdet += std::log(L[i * d + i]);
      }
      double q = 0.0;
      for (int i = 0; i < d; ++i) q += y[i] * y[i];
      return std::exp(-0.5 * q - logdet - 0.5 * d * std::log(2.0 * M_PI));
    }
    case DensityKind::radial_exp: {
      double r = 0.0;
      for (double xi : x) r += xi * xi;
      r = std::sqrt(r);
      return radial_exp_norm(d, model.alpha) * std::exp(-std::pow(r, model.alpha));
    }
    case DensityKind::power_law: {
      double r = 0.0;
      for (double xi : x) r += xi * xi;
      r = std::sqrt(r);
      return power_law_norm(d, model.alpha) /
             (1.0 + std::pow(r, model.alpha));
    }
  }
  return 0.0;
}

void sample_point(const DensityModel& model, Rng& rng, double* out) {
  const int d = model.d;
  switch (model.kind) {
    case DensityKind::uniform_cube: {
      for (int i = 0; i < d; ++i) out[i] = rng.uniform01();
      return;
    }
    case DensityKind::piecewise_constant: {
      double u = rng.uniform01();
      std::size_t cell = 0;
      double acc = 0.0;
      for (; cell + 1 < model.weights.size(); ++cell) {
        acc += model.weights[cell];
        if (u < acc) break;
      }
      std::size_t c = cell;
      for (int i = 0; i < d; ++i) {
        std::size_t ci = c % static_cast<std::size_t>(model.grid_m);
        c /= static_cast<std::size_t>(model.grid_m);
        out[i] = (static_cast<double>(ci) + rng.uniform01()) / model.grid_m;
      }
      return;
    }
    case DensityKind::annulus_beta: {
      double theta = rng.uniform(0.0, 2.0 * M_PI);
      double r = model.inner +
                 (model.outer - model.inner) * rng.beta(model.shape, model.shape);
      out[0] = r * std::cos(theta);
      out[1] = r * std::sin(theta);
      return;
    }
    case DensityKind::gaussian: {
      std::vector<double> L;
      gaussian_chol(model, L);
      std::vector<double> z(d);
      for (int i = 0; i < d; ++i) z[i] = rng.normal();
      for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j) s += L[i * d + j] * z[j];
        out[i] = s;
      }
      return;
    }
    case DensityKind::radial_exp: {
      // r^alpha ~ Gamma(d/alpha)
      double g = rng.gamma(static_cast<double>(d) / model.alpha);
      double r = std::pow(g, 1.0 / model.alpha);
      rng.unit_vector(d, out);
      for (int i = 0; i < d; ++i) out[i] *= r;
      return;
    }
    case DensityKind::power_law: {
      // radial density ∝ r^{d-1}/(1+r^alpha); mixture proposal:
      // r<=1 ~ d r^{d-1}, r>1 ~ Pareto(alpha-d), both dominate the target
      const double a = model.alpha;
      const double p_in = 1.0 / (1.0 + static_cast<double>(d) / (a - d));
      double r = 0.0;
      for (;;) {
        double u = rng.uniform01(), v = rng.uniform01();
        if (u < p_in) {
          r = std::pow(rng.uniform01(), 1.0 / d);
          if (v <= 1.0 / (1.0 + std::pow(r, a))) break;
        } else {
          r = std::pow(rng.uniform01(), -1.0 / (a - d));
          if (v <= std::pow(r, a) / (1.0 + std::pow(r, a))) break;
        }
      }
      rng.unit_vector(d, out);
      for (int i = 0; i < d; ++i) out[i] *= r;
      return;
    }
  }
}

PointCloud sample_binomial(const DensityModel& model, std::size_t n,
                           std::uint64_t seed) {
  PointCloud cloud;
  cloud.d = model.d;
  cloud.seed = seed;
  cloud.model = model.name();
  cloud.process = "binomial(" + std::to_string(n) + ")";
  cloud.xs.resize(n * static_cast<std::size_t>(model.d));
  Rng rng(seed, 0x706f696e74ULL);
  for (std::size_t i = 0; i < n; ++i)
    sample_point(model, rng, cloud.xs.data() + i * model.d);
  return cloud;
}

PointCloud sample_poisson(const DensityModel& model, double nu,
                          std::uint64_t seed) {
  if (!(nu > 0.0)) throw std::invalid_argument("sample_poisson: nu must be > 0");
  Rng rng(seed, 0x706f6973ULL);
  std::size_t n = rng.poisson(nu);
  PointCloud cloud;
  cloud.d = model.d;
  cloud.seed = seed;
  cloud.model = model.name();
  cloud.process = "poisson(" + std::to_string(nu) + ")";
  cloud.xs.resize(n * static_cast<std::size_t>(model.d));
  for (std::size_t i = 0; i < n; ++i)
    sample_point(model, rng, cloud.xs.data() + i * model.d);
  return cloud;
}

double rmax_thermodynamic(double n, int d, int k, GoodType type_tag) {
  if (type_tag == GoodType::III) return 1.0 / std::log(n);
  double lambda_max = std::pow(n, 1.0 / (d * k + 2));
  return std::pow(lambda_max / n, 1.0 / d);
}

double rmax_policy(Process process, double n, int d, int k, GoodType type_tag) {
  if (!(n > 1.0)) throw std::invalid_argument("rmax_policy: size must exceed 1");
  if (type_tag == GoodType::III) return 1.0 / std::log(n);
  double lambda_max = process == Process::poisson
                          ? std::pow(n, 1.0 / (d * k + 2))
                          : std::pow(n, 1.0 / (4.0 * (k + 2)));
  return std::pow(lambda_max / n, 1.0 / d);
}

}  // namespace piuniv
