#include "wolffkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wolffkit/error.hpp"

namespace wolffkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DegenerateProduct: return "DegenerateProduct";
    case ErrorKind::NonpositiveDenominator: return "NonpositiveDenominator";
    case ErrorKind::NonIntegrableAtOrigin: return "NonIntegrableAtOrigin";
    case ErrorKind::DivergentTail: return "DivergentTail";
    case ErrorKind::DivergentAtCenter: return "DivergentAtCenter";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::ModeUnavailable: return "ModeUnavailable";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
  }
  return "Unknown";
}

}  // namespace wolffkit

namespace wolffkit::core {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidParams, what);
}

// pq - (gamma-1)^2 and its sign, with the equality fast path.
enum class ProductSign { Below, Equal, Above };

ProductSign product_sign(const SystemParams& s) {
  const double pq = s.p() * s.q();
  const double g2 = s.gm1() * s.gm1();
  if (nearly_equal(pq, g2)) return ProductSign::Equal;
  return pq < g2 ? ProductSign::Below : ProductSign::Above;
}

double eta0_of(const SystemParams& s) {
  const double bg = s.beta_gamma();
  return bg * (s.gm1() + s.q()) + s.gm1() * s.sigma1() + s.sigma2() * s.q();
}

double xi0_of(const SystemParams& s) {
  const double bg = s.beta_gamma();
  return bg * (s.gm1() + s.p()) + s.gm1() * s.sigma2() + s.sigma1() * s.p();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

bool nearly_equal(double a, double b) noexcept {
  if (a == b) return true;
  return std::abs(a - b) <= kEqualityRelTol * std::max(std::abs(a), std::abs(b));
}

SystemParams SystemParams::make(int n, double beta, double gamma, double p, double q,
                                double sigma1, double sigma2, Convention convention) {
  for (double v : {beta, gamma, p, q, sigma1, sigma2}) {
    if (!std::isfinite(v)) invalid("all parameters must be finite");
  }
  if (n < 3) invalid("n must be an integer >= 3 (got " + std::to_string(n) + ")");
  if (!(beta > 0)) invalid("beta must be > 0 (got " + fmt(beta) + ")");
  if (!(gamma > 1)) invalid("gamma must be > 1 (got " + fmt(gamma) + ")");
  if (!(p > 0)) invalid("p must be > 0 (got " + fmt(p) + ")");
  if (!(q > 0)) invalid("q must be > 0 (got " + fmt(q) + ")");
  const double bg = beta * gamma;
  if (!(bg < n)) {
    invalid("beta*gamma must be < n (beta*gamma = " + fmt(bg) + ", n = " + std::to_string(n) + ")");
  }
  if (convention == Convention::Strict) {
    if (!(sigma1 > -bg)) invalid("sigma1 must be > -beta*gamma (got " + fmt(sigma1) + ")");
    if (!(sigma2 > -bg)) invalid("sigma2 must be > -beta*gamma (got " + fmt(sigma2) + ")");
  }
  SystemParams s;
  s.n_ = n;
  s.beta_ = beta;
  s.gamma_ = gamma;
  s.p_ = p;
  s.q_ = q;
  s.sigma1_ = sigma1;
  s.sigma2_ = sigma2;
  s.convention_ = convention;
  return s;
}

bool SystemParams::convention_holds() const noexcept {
  return sigma1_ > -beta_gamma() && sigma2_ > -beta_gamma();
}

SystemParams SystemParams::swapped() const {
  SystemParams s = *this;
  std::swap(s.p_, s.q_);
  std::swap(s.sigma1_, s.sigma2_);
  return s;
}

double rate_of(const FastVRateCase& c) {
  return std::visit([](const auto& v) { return v.rate; }, c);
}

std::string_view name_of(const FastVRateCase& c) {
  struct Namer {
    std::string_view operator()(const PlainFast&) const { return "PlainFast"; }
    std::string_view operator()(const LogCorrected&) const { return "LogCorrected"; }
    std::string_view operator()(const Reduced&) const { return "Reduced"; }
  };
  return std::visit(Namer{}, c);
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::NonexistenceSubproduct: return "NonexistenceSubproduct";
    case Regime::NonexistenceRate: return "NonexistenceRate";
    case Regime::NonexistenceEndpoint: return "NonexistenceEndpoint";
    case Regime::Admissible: return "Admissible";
    case Regime::EndpointUndecided: return "EndpointUndecided";
  }
  return "Unknown";
}

bool is_nonexistence(Regime r) {
  return r == Regime::NonexistenceSubproduct || r == Regime::NonexistenceRate ||
         r == Regime::NonexistenceEndpoint;
}

SlowRates slow_rates(const SystemParams& s) {
  if (product_sign(s) == ProductSign::Equal) {
    throw Error(ErrorKind::DegenerateProduct, "slow rates undefined: pq == (gamma-1)^2");
  }
  const double denom = s.p() * s.q() - s.gm1() * s.gm1();
  return {eta0_of(s) / denom, xi0_of(s) / denom};
}

double fast_rate(const SystemParams& s) {
  return (s.n() - s.beta_gamma()) / s.gm1();
}

FastVRateCase fast_v_rate(const SystemParams& s) {
  const double a0 = fast_rate(s);
  const double d = s.p() * a0 - s.sigma2();
  const double n = s.n();
  if (nearly_equal(d, n)) return LogCorrected{a0, 1.0 / s.gm1()};
  if (d > n) return PlainFast{a0};
  return Reduced{(s.p() * a0 - (s.beta_gamma() + s.sigma2())) / s.gm1()};
}

ExponentSet exponents(const SystemParams& s) {
  ExponentSet e{};
  e.a0 = fast_rate(s);
  e.iter_ratio = s.p() * s.q() / (s.gm1() * s.gm1());
  e.eta0 = eta0_of(s);
  if (product_sign(s) != ProductSign::Equal) {
    const SlowRates r = slow_rates(s);
    e.q0 = r.q0;
    e.p0 = r.p0;
    if (r.q0 > 0) e.r0_int = s.n() / r.q0;
    if (r.p0 > 0) e.s0_int = s.n() / r.p0;
  }
  return e;
}

CriticalityGap criticality_gap(const SystemParams& s) {
  if (product_sign(s) != ProductSign::Above) {
    throw Error(ErrorKind::DegenerateProduct, "criticality gap requires pq > (gamma-1)^2");
  }
  const SlowRates r = slow_rates(s);
  const double a0 = fast_rate(s);
  const double n = s.n();
  return {r.q0 + r.p0 - a0,
          (n + s.sigma1()) / (s.q() + s.gm1()) + (n + s.sigma2()) / (s.p() + s.gm1()) - a0};
}

IntegrabilityThresholds optimal_integrability_thresholds(const SystemParams& s) {
  const double n = s.n();
  const double base = n * s.gm1() / (n - s.beta_gamma());
  const double denom = s.p() * fast_rate(s) - (s.beta_gamma() + s.sigma2());
  IntegrabilityThresholds t{base, base, false};
  if (denom > 0) {
    t.s_min = std::max(base, n * s.gm1() / denom);
  } else {
    t.s_min = std::numeric_limits<double>::infinity();
    t.s_branch_vacuous = true;
  }
  return t;
}

IntegrabilityThresholds optimal_integrability_thresholds_checked(const SystemParams& s) {
  IntegrabilityThresholds t = optimal_integrability_thresholds(s);
  if (t.s_branch_vacuous) {
    throw Error(ErrorKind::NonpositiveDenominator,
                "p*a0 - (beta*gamma + sigma2) <= 0: s-threshold is vacuous");
  }
  return t;
}

RegimeReport classify(const SystemParams& s) {
  RegimeReport rep{};
  rep.a0 = fast_rate(s);
  rep.convention_holds = s.convention_holds();

  if (product_sign(s) != ProductSign::Above) {
    rep.regime = Regime::NonexistenceSubproduct;
    rep.condition = "pq <= (gamma-1)^2";
    return rep;
  }

  const SlowRates r = slow_rates(s);
  const double m = std::max(r.q0, r.p0);
  rep.max_rate = m;
  rep.criticality = r.q0 + r.p0 - rep.a0;

  if (nearly_equal(m, rep.a0)) {
    const bool endpoint_resolved = (s.gamma() <= 2.0 || nearly_equal(s.gamma(), 2.0));
    if (endpoint_resolved && rep.convention_holds) {
      rep.regime = Regime::NonexistenceEndpoint;
      rep.condition = "pq > (gamma-1)^2 and max{q0,p0} == a0 with gamma in (1,2]";
    } else {
      rep.regime = Regime::EndpointUndecided;
      rep.condition = endpoint_resolved
                          ? "max{q0,p0} == a0 outside the sigma convention"
                          : "max{q0,p0} == a0 with gamma > 2";
    }
  } else if (m > rep.a0) {
    rep.regime = Regime::NonexistenceRate;
    rep.condition = "pq > (gamma-1)^2 and max{q0,p0} > a0";
  } else {
    rep.regime = Regime::Admissible;
    rep.condition = "pq > (gamma-1)^2 and max{q0,p0} < a0";
  }
  return rep;
}

}  // namespace wolffkit::core
