#pragma once

// Wolff potentials of radial densities on R^n.
//
//   W_{beta,gamma}(f)(x) = int_0^inf ( mu(B_t(x)) / t^{n - beta*gamma} )^{1/(gamma-1)} dt/t
//
// For radial f the ball mass reduces to a one-dimensional integral over
// spheres |y| = r weighted by the fraction of each sphere inside B_t(x).

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "wolffkit/quadrature.hpp"

namespace wolffkit::wolff {

enum class DensityKind { PowerPair, Generic };

/// Nonnegative radial function with power-law endpoint metadata:
/// f(r) ~ C0 r^{origin_exponent} as r -> 0 and f(r) ~ Cinf r^{-tail_exponent}
/// as r -> inf (tail_exponent = +inf for compact support).
class RadialDensity {
 public:
  using Fn = std::function<double(double)>;

  RadialDensity(Fn eval, double origin_exponent, double tail_exponent,
                std::vector<double> breakpoints = {1.0}, DensityKind kind = DensityKind::Generic,
                std::optional<double> support_radius = std::nullopt);

  double operator()(double r) const { return scale_ * eval_(r); }

  double origin_exponent() const noexcept { return origin_exponent_; }
  double tail_exponent() const noexcept { return tail_exponent_; }
  /// Radii where f has a kink or jump.
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  DensityKind kind() const noexcept { return kind_; }
  std::optional<double> support_radius() const noexcept { return support_radius_; }

  /// lambda * f, lambda >= 0.
  RadialDensity scaled(double lambda) const;

 private:
  Fn eval_;
  double origin_exponent_;
  double tail_exponent_;
  std::vector<double> breakpoints_;
  DensityKind kind_;
  std::optional<double> support_radius_;
  double scale_ = 1.0;
};

/// f(r) = r^sigma (1 + r^2)^{-theta * coeff_power}.
RadialDensity power_pair_density(double theta, double sigma, double coeff_power);

/// Indicator of the ball of the given radius about the origin.
RadialDensity ball_indicator_density(double radius = 1.0);

enum class TailPolicy { Analytic, HardCutoff };

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-300;
  int max_subdivisions = 2000;
  TailPolicy tail_policy = TailPolicy::Analytic;
  double hard_cutoff = std::numeric_limits<double>::infinity();  // T_max for HardCutoff

  /// Throws InvalidParams on a nonpositive tolerance or fewer than 8
  /// subdivisions.
  void validate() const;
};

/// Fraction of the sphere |y| = r lying inside B_t(x), |x| = rho.
double cap_fraction(int n, double r, double rho, double t);

/// mu(B_t(x)) as a function of t for fixed f and |x| = rho.  Keeps a
/// per-instance cache of the masses of origin-centred balls; not shareable
/// across threads.
class BallMassProfile {
 public:
  BallMassProfile(const RadialDensity& f, int n, double rho, const QuadratureSpec& quad);

  double rho() const noexcept { return rho_; }
  double operator()(double t);
  /// mu(B_R(0)).
  double origin_ball_mass(double radius);

 private:
  double origin_head(double radius) const;

  const RadialDensity& f_;
  int n_;
  double rho_;
  quad::Tolerance tol_;
  double omega_;
  double r_floor_;
  std::map<double, double> cache_;
};

/// omega_{n-1} int_0^inf f(r) r^{n-1} cap_fraction(n, r, rho, t) dr.
double ball_mass(const RadialDensity& f, int n, double rho, double t,
                 const QuadratureSpec& quad = {});

/// W_{beta,gamma}(f) at any x with |x| = rho.
double wolff_potential(const RadialDensity& f, int n, double beta, double gamma, double rho,
                       const QuadratureSpec& quad = {});

}  // namespace wolffkit::wolff
