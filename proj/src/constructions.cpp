#include "wolffkit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wolffkit/error.hpp"
#include "wolffkit/parallel.hpp"

namespace wolffkit::constructions {

namespace {

constexpr double kInnerLo = 1e-3;
constexpr double kInnerHi = 1e3;
constexpr double kMinDecades = 6.0;

double profile(double theta, double r) {
  return std::exp(-theta * std::log1p(r * r));
}

Spread spread_of(const std::vector<RatioSample>& s, double split, double RatioSample::*field) {
  auto ratio = [&](auto pred) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& x : s) {
      if (!pred(x.r)) continue;
      lo = std::min(lo, x.*field);
      hi = std::max(hi, x.*field);
    }
    return std::pair{lo, hi};
  };
  Spread out;
  const auto [lo, hi] = ratio([](double) { return true; });
  const auto [ilo, ihi] = ratio([split](double r) { return r <= split; });
  const auto [olo, ohi] = ratio([split](double r) { return r > split; });
  out.min = lo;
  out.max = hi;
  out.full = hi / lo;
  out.inner = ihi / ilo;
  out.outer = ohi / olo;
  return out;
}

bool plateaus(const Spread& s) {
  return std::isfinite(s.full) && s.min > 0 && s.outer <= 1.0 + kPlateauTol &&
         s.full <= (1.0 + kPlateauTol) * s.inner;
}

std::vector<asymptotics::Sample> sample_potential(const wolff::RadialDensity& f,
                                                  const core::SystemParams& s,
                                                  const std::vector<double>& radii,
                                                  const wolff::QuadratureSpec& quad, int threads) {
  return parallel_map<asymptotics::Sample>(radii.size(), threads, [&](std::size_t i) {
    const double r = radii[i];
    return asymptotics::Sample{r, wolff::wolff_potential(f, s.n(), s.beta(), s.gamma(), r, quad)};
  });
}

}  // namespace

std::string_view to_string(Mode m) {
  return m == Mode::Slow ? "slow" : "fast";
}

bool ExplicitPair::fast_sign_condition() const noexcept {
  return params_.sigma1() <= params_.sigma2() && params_.sigma2() <= 0.0;
}

double ExplicitPair::u(double r) const {
  return profile(theta1_, r);
}

double ExplicitPair::v(double r) const {
  return profile(theta2_, r);
}

wolff::RadialDensity ExplicitPair::u_source() const {
  return wolff::power_pair_density(theta2_, params_.sigma1(), params_.q());
}

wolff::RadialDensity ExplicitPair::v_source() const {
  return wolff::power_pair_density(theta1_, params_.sigma2(), params_.p());
}

ExplicitPair ExplicitPair::swapped() const {
  return ExplicitPair(theta2_, theta1_, mode_, params_.swapped());
}

ExplicitPair build_pair(const core::SystemParams& s, Mode mode) {
  const core::RegimeReport report = core::classify(s);
  if (report.regime != core::Regime::Admissible) {
    throw Error(ErrorKind::NotAdmissible, "parameters are not admissible (" +
                                              std::string(core::to_string(report.regime)) + ": " +
                                              report.condition + ")");
  }
  const double bg = s.beta_gamma();
  const double n = s.n();
  if (mode == Mode::Slow) {
    const core::SlowRates rates = core::slow_rates(s);
    const double t1 = 0.5 * rates.q0;
    const double t2 = 0.5 * rates.p0;
    const double eu = 2.0 * s.p() * t1 - s.sigma2();
    const double ev = 2.0 * s.q() * t2 - s.sigma1();
    if (!(bg < eu && eu < n && bg < ev && ev < n)) {
      throw Error(ErrorKind::NotAdmissible,
                  "slow pair violates beta*gamma < 2p*theta1 - sigma2 < n or its mirror");
    }
    return ExplicitPair(t1, t2, mode, s);
  }
  const double denom = n - bg;
  const double p_min = (n + s.sigma2()) * s.gm1() / denom;
  const double q_min = (n + s.sigma1()) * s.gm1() / denom;
  if (!(s.p() > p_min)) {
    throw Error(ErrorKind::ModeUnavailable,
                "fast pair needs p > (n+sigma2)(gamma-1)/(n-beta*gamma) = " + std::to_string(p_min));
  }
  if (!(s.q() > q_min)) {
    throw Error(ErrorKind::ModeUnavailable,
                "fast pair needs q > (n+sigma1)(gamma-1)/(n-beta*gamma) = " + std::to_string(q_min));
  }
  const double theta = 0.5 * core::fast_rate(s);
  return ExplicitPair(theta, theta, mode, s);
}

std::vector<double> default_ratio_radii() {
  return asymptotics::log_spaced(1e-3, 1e9, 60);
}

std::vector<double> default_tail_radii() {
  return asymptotics::log_spaced(1e3, 1e9, 40);
}

BoundednessReport coefficient_ratios(const ExplicitPair& pair, const std::vector<double>& radii,
                                     const wolff::QuadratureSpec& quad, int threads) {
  quad.validate();
  if (radii.size() < 2) throw Error(ErrorKind::InvalidParams, "need at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw Error(ErrorKind::InvalidParams, "radii must be positive and strictly increasing");
    }
  }
  if (radii.front() > kInnerLo || radii.back() < kInnerHi ||
      std::log10(radii.back() / radii.front()) < kMinDecades) {
    throw Error(ErrorKind::InvalidParams,
                "radii must cover [1e-3, 1e3] and span at least six decades");
  }

  const core::SystemParams& s = pair.params();
  const wolff::RadialDensity fu = pair.u_source();
  const wolff::RadialDensity fv = pair.v_source();
  BoundednessReport report;
  report.samples = parallel_map<RatioSample>(radii.size(), threads, [&](std::size_t i) {
    const double r = radii[i];
    const double wu = wolff::wolff_potential(fu, s.n(), s.beta(), s.gamma(), r, quad);
    const double wv = wolff::wolff_potential(fv, s.n(), s.beta(), s.gamma(), r, quad);
    return RatioSample{r, pair.u(r) / wu, pair.v(r) / wv};
  });
  report.r_lo = radii.front();
  report.r_hi = radii.back();
  report.split = std::sqrt(report.r_lo * report.r_hi);
  report.c1 = spread_of(report.samples, report.split, &RatioSample::c1);
  report.c2 = spread_of(report.samples, report.split, &RatioSample::c2);
  const double worst = std::max(report.c1.full, report.c2.full);
  if (plateaus(report.c1) && plateaus(report.c2)) {
    report.verdict = DoubleBounded{worst};
  } else {
    report.verdict = SpreadExceeded{worst};
  }
  return report;
}

DecayReport verify_decay_class(const ExplicitPair& pair, const wolff::QuadratureSpec& quad,
                               const std::vector<double>& radii, int threads) {
  quad.validate();
  const core::SystemParams& s = pair.params();
  const auto wu = sample_potential(pair.u_source(), s, radii, quad, threads);
  const auto wv = sample_potential(pair.v_source(), s, radii, quad, threads);
  DecayReport report;
  report.u = asymptotics::fit_rate(wu, true);
  report.v = asymptotics::fit_rate(wv, true);
  if (pair.mode() == Mode::Slow) {
    report.expected_theta_u = 2.0 * pair.theta1();
    report.expected_theta_v = 2.0 * pair.theta2();
    report.expected_kappa_v = 0.0;
  } else {
    const core::FastVRateCase vcase = core::fast_v_rate(s);
    report.expected_theta_u = core::rate_of(core::fast_v_rate(s.swapped()));
    report.expected_theta_v = core::rate_of(vcase);
    const auto* log_case = std::get_if<core::LogCorrected>(&vcase);
    report.expected_kappa_v = log_case ? log_case->log_exponent : 0.0;
  }
  return report;
}

FastVProbe probe_fast_v_rate(const core::SystemParams& s, const wolff::QuadratureSpec& quad,
                             const std::vector<double>& radii, int threads) {
  quad.validate();
  const wolff::RadialDensity f =
      wolff::power_pair_density(0.5 * core::fast_rate(s), s.sigma2(), s.p());
  const auto samples = sample_potential(f, s, radii, quad, threads);
  return {core::fast_v_rate(s), asymptotics::fit_rate(samples, true)};
}

}  // namespace wolffkit::constructions
