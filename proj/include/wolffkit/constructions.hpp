#pragma once

// Explicit radial solution pairs u = (1+|x|^2)^{-theta1}, v = (1+|x|^2)^{-theta2}
// of the Wolff-type system, and numerical checks that the induced
// coefficients are bounded above and below and that the decay rates match.

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "wolffkit/asymptotics.hpp"
#include "wolffkit/core.hpp"
#include "wolffkit/wolff.hpp"

namespace wolffkit::constructions {

enum class Mode { Slow, Fast };

std::string_view to_string(Mode m);

class ExplicitPair {
 public:
  double theta1() const noexcept { return theta1_; }
  double theta2() const noexcept { return theta2_; }
  Mode mode() const noexcept { return mode_; }
  const core::SystemParams& params() const noexcept { return params_; }
  /// True when sigma1 <= sigma2 <= 0, the extra hypothesis of the
  /// fast-decay asymptotics.  Fast pairs are built without it.
  bool fast_sign_condition() const noexcept;

  double u(double r) const;
  double v(double r) const;
  /// |y|^{sigma1} v^q, the density whose potential should match u.
  wolff::RadialDensity u_source() const;
  /// |y|^{sigma2} u^p.
  wolff::RadialDensity v_source() const;

  /// The same pair with (u, p, sigma2) and (v, q, sigma1) exchanged.
  ExplicitPair swapped() const;

 private:
  friend ExplicitPair build_pair(const core::SystemParams&, Mode);
  ExplicitPair(double t1, double t2, Mode m, core::SystemParams p)
      : theta1_(t1), theta2_(t2), mode_(m), params_(p) {}
  double theta1_;
  double theta2_;
  Mode mode_;
  core::SystemParams params_;
};

/// Throws NotAdmissible unless classify() says Admissible, and
/// ModeUnavailable when Fast is requested but p <= (n+s2)(g-1)/(n-bg) or
/// q <= (n+s1)(g-1)/(n-bg).
ExplicitPair build_pair(const core::SystemParams& params, Mode mode);

struct RatioSample {
  double r;
  double c1;  // u / W(|y|^{s1} v^q)
  double c2;  // v / W(|y|^{s2} u^p)
};

struct Spread {
  double min = 0.0;
  double max = 0.0;
  double full = 0.0;   // max/min over every radius
  double inner = 0.0;  // max/min over r <= split
  double outer = 0.0;  // max/min over r > split
};

struct DoubleBounded {
  double spread;
};
struct SpreadExceeded {
  double spread;
};
using BoundednessVerdict = std::variant<DoubleBounded, SpreadExceeded>;

/// Plateau tolerance: the outer-window spread must stay within 10% of 1 and
/// the full spread within 10% of the inner spread.
inline constexpr double kPlateauTol = 0.10;

struct BoundednessReport {
  std::vector<RatioSample> samples;
  Spread c1;
  Spread c2;
  double r_lo = 0.0;
  double r_hi = 0.0;
  double split = 0.0;  // geometric midpoint of the window
  BoundednessVerdict verdict;
};

/// 60 log-spaced radii over [1e-3, 1e9].
std::vector<double> default_ratio_radii();
/// 40 log-spaced radii over [1e3, 1e9].
std::vector<double> default_tail_radii();

/// Radii must increase strictly and cover [1e-3, 1e3].  The window must
/// span at least six decades.
BoundednessReport coefficient_ratios(const ExplicitPair& pair, const std::vector<double>& radii,
                                     const wolff::QuadratureSpec& quad = {}, int threads = 1);

inline double spread_of(const BoundednessVerdict& v) {
  return std::visit([](const auto& x) { return x.spread; }, v);
}
inline bool is_double_bounded(const BoundednessVerdict& v) {
  return std::holds_alternative<DoubleBounded>(v);
}

struct DecayReport {
  asymptotics::RateFit u;  // fit of W(|y|^{s1} v^q)
  asymptotics::RateFit v;  // fit of W(|y|^{s2} u^p)
  double expected_theta_u;
  double expected_theta_v;
  double expected_kappa_v;
};

/// Fits both potentials over the tail radii (log regressor enabled).  Slow
/// pairs expect (q0, p0); fast pairs expect a0 for u and the fast_v_rate
/// branch for v.
DecayReport verify_decay_class(const ExplicitPair& pair, const wolff::QuadratureSpec& quad = {},
                               const std::vector<double>& radii = default_tail_radii(),
                               int threads = 1);

struct FastVProbe {
  core::FastVRateCase expected;
  asymptotics::RateFit fit;
};

/// Decay of W(|y|^{s2} u^p) for the fast profile u = (1+r^2)^{-a0/2},
/// whatever the regime of the full system.  Exercises all three fast_v_rate
/// branches, two of which no admissible fast pair can reach.
FastVProbe probe_fast_v_rate(const core::SystemParams& params,
                             const wolff::QuadratureSpec& quad = {},
                             const std::vector<double>& radii = default_tail_radii(),
                             int threads = 1);

}  // namespace wolffkit::constructions
