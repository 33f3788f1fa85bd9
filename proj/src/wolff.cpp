#include "wolffkit/wolff.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "wolffkit/error.hpp"
#include "wolffkit/special.hpp"

namespace wolffkit::wolff {

namespace {

// Shells closer to the origin than r_floor are summed analytically from the
// origin exponent.
constexpr double kFloorFactor = 1e-10;
// Head of the outer integral: t < kHeadFactor * (smallest length scale).
constexpr double kHeadFactor = 1e-6;
constexpr double kMaxOuterRadius = 1e100;

double min_positive_breakpoint(const RadialDensity& f) {
  double m = std::numeric_limits<double>::infinity();
  for (double b : f.breakpoints()) {
    if (b > 0) m = std::min(m, b);
  }
  return std::isfinite(m) ? m : 1.0;
}

double max_breakpoint(const RadialDensity& f) {
  double m = 1.0;
  for (double b : f.breakpoints()) m = std::max(m, b);
  if (f.support_radius()) m = std::max(m, *f.support_radius());
  return m;
}

quad::Tolerance inner_tolerance(const QuadratureSpec& q) {
  quad::Tolerance t;
  t.rel = std::max(q.rel_tol * 1e-2, 1e-13);
  t.abs = q.abs_tol * 1e-2;
  t.max_subdivisions = q.max_subdivisions;
  return t;
}

}  // namespace

RadialDensity::RadialDensity(Fn eval, double origin_exponent, double tail_exponent,
                             std::vector<double> breakpoints, DensityKind kind,
                             std::optional<double> support_radius)
    : eval_(std::move(eval)),
      origin_exponent_(origin_exponent),
      tail_exponent_(tail_exponent),
      breakpoints_(std::move(breakpoints)),
      kind_(kind),
      support_radius_(support_radius) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

RadialDensity RadialDensity::scaled(double lambda) const {
  if (!(lambda >= 0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::InvalidParams, "density scale must be finite and >= 0");
  }
  RadialDensity copy = *this;
  copy.scale_ *= lambda;
  return copy;
}

RadialDensity power_pair_density(double theta, double sigma, double coeff_power) {
  const double decay = theta * coeff_power;
  auto eval = [sigma, decay](double r) {
    if (r <= 0) return 0.0;
    const double lr = std::log(r);
    // log1p(r^2) without overflow for large r.
    const double l1 = r < 1e150 ? std::log1p(r * r) : 2.0 * lr;
    return std::exp(sigma * lr - decay * l1);
  };
  return RadialDensity(eval, sigma, 2.0 * decay - sigma, {1.0}, DensityKind::PowerPair);
}

RadialDensity ball_indicator_density(double radius) {
  if (!(radius > 0)) throw Error(ErrorKind::InvalidParams, "indicator radius must be > 0");
  auto eval = [radius](double r) { return r < radius ? 1.0 : 0.0; };
  return RadialDensity(eval, 0.0, std::numeric_limits<double>::infinity(), {radius},
                       DensityKind::Generic, radius);
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0)) throw Error(ErrorKind::InvalidParams, "rel_tol must be > 0");
  if (!(abs_tol > 0)) throw Error(ErrorKind::InvalidParams, "abs_tol must be > 0");
  if (max_subdivisions < 8) throw Error(ErrorKind::InvalidParams, "max_subdivisions must be >= 8");
  if (tail_policy == TailPolicy::HardCutoff && !(hard_cutoff > 0 && std::isfinite(hard_cutoff))) {
    throw Error(ErrorKind::InvalidParams, "hard cutoff must be finite and > 0");
  }
}

namespace {

// Cap fraction from the factors of 1 - u and 1 + u,
//   2 r rho (1 - u) = (t - d)(t + d),   2 r rho (1 + u) = (r + rho - t)(r + rho + t),
// with u = (r^2 + rho^2 - t^2) / (2 r rho) and d = |r - rho|.  Callers pass
// gap = t - d and outer = r + rho - t formed without cancellation.
double cap_from_factors(int n, double r, double rho, double t, double gap, double outer) {
  if (gap <= 0.0) return 0.0;
  if (outer <= 0.0) return 1.0;
  const double d = t - gap;
  const double one_minus = gap * (t + d);
  const double one_plus = outer * (r + rho + t);
  const double denom = 2.0 * r * rho;
  const double x = std::clamp((one_minus / denom) * (one_plus / denom), 0.0, 1.0);
  const double half = 0.5 * special::incomplete_beta(0.5 * (n - 1), 0.5, x);
  return one_plus >= one_minus ? half : 1.0 - half;
}

}  // namespace

double cap_fraction(int n, double r, double rho, double t) {
  if (rho == 0.0) return r < t ? 1.0 : 0.0;
  if (r + rho <= t) return 1.0;
  // t - |r - rho|, ordered so the leading subtraction is exact or benign.
  double gap;
  if (r <= rho) {
    gap = (2.0 * r < rho) ? r - (rho - t) : t - (rho - r);
  } else {
    gap = (r <= 2.0 * rho) ? t - (r - rho) : (rho + t) - r;
  }
  // r + rho - t, grouping the two terms that nearly cancel.
  double outer;
  if (t >= 0.5 * rho && t <= 2.0 * rho) {
    outer = r + (rho - t);
  } else if (t >= 0.5 * r && t <= 2.0 * r) {
    outer = rho + (r - t);
  } else {
    outer = (r + rho) - t;
  }
  return cap_from_factors(n, r, rho, t, gap, outer);
}

BallMassProfile::BallMassProfile(const RadialDensity& f, int n, double rho,
                                 const QuadratureSpec& quad)
    : f_(f),
      n_(n),
      rho_(rho),
      tol_(inner_tolerance(quad)),
      omega_(special::unit_sphere_area(n)) {
  if (f.origin_exponent() <= -n) {
    throw Error(ErrorKind::NonIntegrableAtOrigin,
                "density is not locally integrable at the origin (origin exponent " +
                    std::to_string(f.origin_exponent()) + " <= -n)");
  }
  r_floor_ = kFloorFactor * min_positive_breakpoint(f);
  if (rho > 0) r_floor_ = std::min(r_floor_, kFloorFactor * rho);
}

double BallMassProfile::origin_head(double radius) const {
  const double fr = f_(radius);
  if (fr == 0.0) return 0.0;
  return omega_ * fr * std::pow(radius, n_) / (n_ + f_.origin_exponent());
}

double BallMassProfile::origin_ball_mass(double radius) {
  if (radius <= 0) return 0.0;
  if (f_.support_radius()) radius = std::min(radius, *f_.support_radius());
  if (radius <= r_floor_) return origin_head(radius);
  if (auto hit = cache_.find(radius); hit != cache_.end()) return hit->second;

  double from = r_floor_;
  double base = 0.0;
  auto it = cache_.upper_bound(radius);
  if (it != cache_.begin()) {
    --it;
    from = it->first;
    base = it->second;
  } else {
    base = origin_head(r_floor_);
  }
  std::vector<double> pts{from, radius};
  for (double b : f_.breakpoints()) {
    if (b > from && b < radius) pts.push_back(b);
  }
  auto integrand = [this](double r) { return f_(r) * std::pow(r, n_ - 1); };
  const double value = base + omega_ * quad::integrate_segments(integrand, pts, tol_).value;
  cache_.emplace(radius, value);
  return value;
}

double BallMassProfile::operator()(double t) {
  if (t <= 0) return 0.0;
  if (rho_ == 0.0) return origin_ball_mass(t);

  const double inside = t > rho_ ? origin_ball_mass(t - rho_) : 0.0;
  double lo = std::abs(rho_ - t);
  double hi = rho_ + t;
  if (f_.support_radius()) hi = std::min(hi, *f_.support_radius());

  double shell = 0.0;
  if (lo < r_floor_) {
    const double fr = f_(r_floor_);
    if (fr > 0) {
      shell += omega_ * fr * std::pow(r_floor_, n_) / (n_ + f_.origin_exponent()) *
               cap_fraction(n_, r_floor_, rho_, t);
    }
    lo = r_floor_;
  }
  if (lo >= hi) return inside + shell;

  const int n = n_;
  const double rho = rho_;
  if (2.0 * t < rho) {
    // Thin shell about rho: integrate over the offset r - rho so the gap is exact.
    const double upper = std::min(t, hi - rho);
    std::vector<double> pts{-t, upper};
    if (upper > 0.0) pts.push_back(0.0);
    for (double b : f_.breakpoints()) {
      if (b - rho > -t && b - rho < upper) pts.push_back(b - rho);
    }
    auto integrand = [this, n, rho, t](double off) {
      const double r = rho + off;
      const double c = cap_from_factors(n, r, rho, t, t - std::abs(off), (2.0 * rho - t) + off);
      if (c == 0.0) return 0.0;
      return f_(r) * std::pow(r, n - 1) * c;
    };
    shell += omega_ * quad::integrate_segments(integrand, pts, tol_).value;
  } else if (2.0 * rho < t) {
    // Thin shell about t: r = t + off with |off| <= rho.
    const double upper = std::min(rho, hi - t);
    std::vector<double> pts{-rho, upper};
    if (upper > 0.0) pts.push_back(0.0);
    for (double b : f_.breakpoints()) {
      if (b - t > -rho && b - t < upper) pts.push_back(b - t);
    }
    auto integrand = [this, n, rho, t](double off) {
      const double r = t + off;
      const double c = cap_from_factors(n, r, rho, t, rho - off, rho + off);
      if (c == 0.0) return 0.0;
      return f_(r) * std::pow(r, n - 1) * c;
    };
    shell += omega_ * quad::integrate_segments(integrand, pts, tol_).value;
  } else {
    std::vector<double> pts{lo, hi};
    for (double b : f_.breakpoints()) {
      if (b > lo && b < hi) pts.push_back(b);
    }
    if (rho > lo && rho < hi) pts.push_back(rho);
    auto integrand = [this, n, rho, t](double r) {
      const double c = cap_fraction(n, r, rho, t);
      if (c == 0.0) return 0.0;
      return f_(r) * std::pow(r, n - 1) * c;
    };
    shell += omega_ * quad::integrate_segments(integrand, pts, tol_).value;
  }
  return inside + shell;
}

double ball_mass(const RadialDensity& f, int n, double rho, double t, const QuadratureSpec& quad) {
  quad.validate();
  if (n < 2) throw Error(ErrorKind::InvalidParams, "n must be >= 2");
  BallMassProfile profile(f, n, rho, quad);
  return profile(t);
}

double wolff_potential(const RadialDensity& f, int n, double beta, double gamma, double rho,
                       const QuadratureSpec& quad) {
  quad.validate();
  if (!(gamma > 1)) throw Error(ErrorKind::InvalidParams, "gamma must be > 1");
  if (!(beta > 0)) throw Error(ErrorKind::InvalidParams, "beta must be > 0");
  const double bg = beta * gamma;
  if (!(bg < n)) throw Error(ErrorKind::InvalidParams, "beta*gamma must be < n");
  if (!(rho >= 0) || !std::isfinite(rho)) throw Error(ErrorKind::InvalidParams, "rho must be >= 0");
  if (!(f.tail_exponent() > bg)) {
    throw Error(ErrorKind::DivergentTail,
                "Wolff potential diverges at infinity: tail exponent " +
                    std::to_string(f.tail_exponent()) + " <= beta*gamma");
  }
  if (rho == 0.0 && !(f.origin_exponent() > -bg)) {
    throw Error(ErrorKind::DivergentAtCenter,
                "Wolff potential diverges at the origin: origin exponent <= -beta*gamma");
  }

  BallMassProfile mass(f, n, rho, quad);
  const double k = 1.0 / (gamma - 1.0);
  const double c = n - bg;

  // Integrand in the variable s = log t.
  auto integrand_log = [&](double t) {
    const double m = mass(t);
    if (m <= 0.0) return 0.0;
    return std::exp(k * (std::log(m) - c * std::log(t)));
  };
  auto integrand = [&](double t) { return integrand_log(t) / t; };

  const double b_min = min_positive_breakpoint(f);
  const double b_max = max_breakpoint(f);

  // Head: mu(B_t(x)) ~ C t^{n + kappa} for small t.
  double scale = b_min;
  double head_exponent = bg * k;
  if (rho > 0) {
    scale = rho;
    for (double b : f.breakpoints()) {
      if (b > 0 && b != rho) scale = std::min(scale, std::abs(rho - b));
    }
  } else {
    head_exponent = (bg + f.origin_exponent()) * k;
  }
  const double t_head = kHeadFactor * scale;
  const double head = integrand_log(t_head) / head_exponent;

  double t_hi;
  if (quad.tail_policy == TailPolicy::HardCutoff) {
    t_hi = quad.hard_cutoff;
  } else {
    const double kappa_inf = std::min(f.tail_exponent(), static_cast<double>(n));
    const double tail_rate = (kappa_inf - bg) * k;
    const double decades =
        std::clamp(std::ceil((-std::log10(quad.rel_tol) + 4.0) / tail_rate), 3.0, 90.0);
    t_hi = std::min(std::max(rho, b_max) * std::pow(10.0, decades), kMaxOuterRadius);
  }

  std::vector<double> pts{t_head, t_hi};
  auto add = [&](double t) {
    if (t > t_head && t < t_hi) pts.push_back(t);
  };
  if (rho > 0) {
    add(rho);
    add(0.5 * rho);
    add(2.0 * rho);
    for (double b : f.breakpoints()) {
      add(std::abs(rho - b));
      add(rho + b);
      for (double w = 10.0 * b; w < rho; w *= 10.0) {
        add(rho - w);
        add(rho + w);
      }
    }
  } else {
    for (double b : f.breakpoints()) add(b);
  }

  quad::Tolerance tol;
  tol.rel = quad.rel_tol;
  tol.abs = quad.abs_tol;
  tol.max_subdivisions = quad.max_subdivisions;
  const double body = quad::integrate_segments(integrand, pts, tol).value;

  double tail = 0.0;
  if (quad.tail_policy == TailPolicy::Analytic) {
    const double g_hi = integrand_log(t_hi);
    if (g_hi > 0.0) {
      constexpr double ds = 0.05;
      const double g_next = integrand_log(t_hi * std::exp(ds));
      const double slope = g_next > 0.0 ? (std::log(g_hi) - std::log(g_next)) / ds : 0.0;
      if (!(slope > 0.0)) {
        throw Error(ErrorKind::DivergentTail, "Wolff integrand is not decaying at t = " +
                                                  std::to_string(t_hi));
      }
      tail = g_hi / slope;
    }
  }
  return head + body + tail;
}

}  // namespace wolffkit::wolff
