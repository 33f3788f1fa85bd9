#pragma once

// Reference values computed independently of the library.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracles {

inline double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

/// Volume of B_t(x) intersected with B_R(0) in R^3, |x| = d.
inline double lens_volume_3d(double big_r, double t, double d) {
  const double pi = std::numbers::pi;
  if (d >= big_r + t) return 0.0;
  if (d <= std::abs(big_r - t)) {
    const double m = std::min(big_r, t);
    return 4.0 / 3.0 * pi * m * m * m;
  }
  const double s = big_r + t - d;
  return pi * s * s * (d * d + 2 * d * big_r - 3 * big_r * big_r + 2 * d * t + 6 * big_r * t - 3 * t * t) /
         (12.0 * d);
}

/// Fraction of the sphere |y| = r in R^3 inside B_t(x), |x| = rho, from
/// Archimedes' hat-box theorem: the cap area is linear in its height.
inline double cap_fraction_3d(double r, double rho, double t) {
  if (t >= r + rho) return 1.0;
  if (t <= std::abs(r - rho)) return 0.0;
  const double u = (r * r + rho * rho - t * t) / (2.0 * r * rho);
  return 0.5 * (1.0 - u);
}

struct McEstimate {
  double fraction;
  double sigma;
};

/// Monte-Carlo cap fraction with `samples` uniform points on the sphere.
inline McEstimate cap_fraction_mc(int n, double r, double rho, double t, int samples,
                                  unsigned seed = 12345) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> y(static_cast<std::size_t>(n));
  long hits = 0;
  for (int s = 0; s < samples; ++s) {
    double norm2 = 0.0;
    for (double& c : y) {
      c = gauss(rng);
      norm2 += c * c;
    }
    const double scale = r / std::sqrt(norm2);
    double dist2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double yi = y[static_cast<std::size_t>(i)] * scale - (i == 0 ? rho : 0.0);
      dist2 += yi * yi;
    }
    if (dist2 < t * t) ++hits;
  }
  const double p = static_cast<double>(hits) / samples;
  return {p, std::sqrt(std::max(p * (1.0 - p), 1e-300) / samples)};
}

using Radial = std::function<double(double)>;

/// int over [a, b] (b may be +inf) split at the given interior points.
inline double integrate_split(const Radial& g, std::vector<double> pts, double upper) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] > pts[i]) total += ts.integrate(g, pts[i], pts[i + 1], 1e-13);
  }
  if (std::isinf(upper)) {
    const double from = pts.back();
    total += es.integrate([&](double x) { return g(from + x); }, 1e-13);
  }
  return total;
}

/// Riesz potential I_2 f at |x| = rho from Newton's theorem:
/// the mean of |x - y|^{2-n} over |y| = r is max(r, rho)^{2-n}.
inline double riesz2(const Radial& f, int n, double rho, std::vector<double> breaks) {
  auto g = [&](double r) {
    const double fr = r > 0 ? f(r) : 0.0;
    if (fr == 0.0) return 0.0;
    return fr * std::pow(r, n - 1) * std::pow(std::max(r, rho), 2.0 - n);
  };
  breaks.push_back(0.0);
  if (rho > 0) breaks.push_back(rho);
  double top = 0.0;
  for (double b : breaks) top = std::max(top, b);
  breaks.push_back(top + 1.0);
  return sphere_area(n) * integrate_split(g, breaks, INFINITY);
}

/// Mean of |x - y|^{1-n} over the unit-normalised sphere |y| = r, |x| = rho,
/// integrated in w = |x - y|^2 so both endpoint singularities are algebraic.
inline double riesz1_sphere_kernel(int n, double r, double rho) {
  if (rho == 0.0) return std::pow(r, 1.0 - n);
  const double wlo = (r - rho) * (r - rho);
  const double whi = (r + rho) * (r + rho);
  const double b = 2.0 * r * rho;
  auto g = [&](double w) {
    const double one_minus_c2 = (w - wlo) * (whi - w) / (b * b);
    return std::pow(w, 0.5 * (1.0 - n)) * std::pow(std::max(one_minus_c2, 0.0), 0.5 * (n - 3));
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double inner;
  if (wlo > 0) {
    // Split geometrically so the 1/w-type peak near wlo is resolved.
    inner = 0.0;
    double a = wlo;
    while (a < whi) {
      const double next = std::min(whi, a * 4.0);
      inner += ts.integrate(g, a, next, 1e-13);
      a = next;
    }
  } else {
    inner = ts.integrate(g, wlo, whi, 1e-13);
  }
  // The c-integral over [-1, 1] has weight omega_{n-2} (1 - c^2)^{(n-3)/2};
  // normalise by omega_{n-1}.
  return sphere_area(n - 1) / b * inner / sphere_area(n);
}

/// Riesz potential I_1 f at |x| = rho by a two-dimensional quadrature.
inline double riesz1(const Radial& f, int n, double rho, std::vector<double> breaks) {
  auto g = [&](double r) {
    const double fr = r > 0 ? f(r) : 0.0;
    if (fr == 0.0) return 0.0;
    return fr * std::pow(r, n - 1) * riesz1_sphere_kernel(n, r, rho);
  };
  breaks.push_back(0.0);
  if (rho > 0) {
    breaks.push_back(rho);
    breaks.push_back(0.5 * rho);
    breaks.push_back(1.5 * rho);
  }
  double top = 0.0;
  for (double b : breaks) top = std::max(top, b);
  breaks.push_back(top + 1.0);
  return sphere_area(n) * integrate_split(g, breaks, INFINITY);
}

/// r^{a0} (ln lambda r)^{-k} int_{lambda r}^inf (ln t)^k t^{-a0-1} dt with the
/// inner integral as an upper incomplete gamma function.
inline double lambda_lhs(int n, double beta, double gamma, double lambda, double r) {
  const double k = 1.0 / (gamma - 1.0);
  const double a0 = (n - beta * gamma) * k;
  const double s = std::log(lambda * r);
  const double upper = boost::math::tgamma(k + 1.0, a0 * s);
  return std::exp(a0 * std::log(r) - k * std::log(s) - (k + 1.0) * std::log(a0) + std::log(upper));
}

}  // namespace oracles
