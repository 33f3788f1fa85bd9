#pragma once

// System parameters of the coupled Wolff-type integral system
//
//   u = c1 W_{beta,gamma}(|y|^s1 v^q),   v = c2 W_{beta,gamma}(|y|^s2 u^p)
//
// together with the closed-form exponents that govern existence and decay.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace wolffkit::core {

/// Relative tolerance used for every equality test in the classifier.
inline constexpr double kEqualityRelTol = 1e-12;

/// a == b, or |a - b| <= kEqualityRelTol * max(|a|, |b|).
bool nearly_equal(double a, double b) noexcept;

enum class Convention {
  Strict,          // sigma_i > -beta*gamma required
  AllowNonstrict,  // sigma_i unrestricted; convention-dependent clauses skipped
};

class SystemParams {
 public:
  /// Validates every invariant; throws Error(InvalidParams) naming the first
  /// violated one.
  static SystemParams make(int n, double beta, double gamma, double p, double q,
                           double sigma1, double sigma2,
                           Convention convention = Convention::Strict);

  int n() const noexcept { return n_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double sigma1() const noexcept { return sigma1_; }
  double sigma2() const noexcept { return sigma2_; }
  Convention convention() const noexcept { return convention_; }

  double beta_gamma() const noexcept { return beta_ * gamma_; }
  double gm1() const noexcept { return gamma_ - 1.0; }
  /// True when both sigma_i > -beta*gamma, whatever the construction mode.
  bool convention_holds() const noexcept;

  /// Exchanges (p, sigma2) with (q, sigma1).
  SystemParams swapped() const;

  bool operator==(const SystemParams&) const = default;

 private:
  SystemParams() = default;
  int n_ = 3;
  double beta_ = 1.0;
  double gamma_ = 2.0;
  double p_ = 1.0;
  double q_ = 1.0;
  double sigma1_ = 0.0;
  double sigma2_ = 0.0;
  Convention convention_ = Convention::Strict;
};

struct SlowRates {
  double q0;
  double p0;
};

struct ExponentSet {
  std::optional<double> q0;  // empty when pq == (gamma-1)^2
  std::optional<double> p0;
  double a0;
  double iter_ratio;  // pq / (gamma-1)^2
  double eta0;
  std::optional<double> r0_int;  // n / q0, only when q0 > 0
  std::optional<double> s0_int;  // n / p0, only when p0 > 0
};

// Discriminant d = p*a0 - sigma2 compared against n.
struct PlainFast {
  double rate;
};
struct LogCorrected {
  double rate;
  double log_exponent;  // 1/(gamma-1)
};
struct Reduced {
  double rate;  // (p*a0 - (beta*gamma + sigma2)) / (gamma-1)
};
using FastVRateCase = std::variant<PlainFast, LogCorrected, Reduced>;

/// Power-law rate of the case, ignoring any logarithmic factor.
double rate_of(const FastVRateCase& c);
std::string_view name_of(const FastVRateCase& c);

enum class Regime {
  NonexistenceSubproduct,
  NonexistenceRate,
  NonexistenceEndpoint,
  Admissible,
  EndpointUndecided,
};

std::string_view to_string(Regime r);
bool is_nonexistence(Regime r);

struct RegimeReport {
  Regime regime;
  std::optional<double> max_rate;  // max{q0, p0}, when pq > (gamma-1)^2
  double a0;
  std::optional<double> criticality;  // q0 + p0 - a0, when pq > (gamma-1)^2
  std::string condition;              // the inequality that decided the tag
  bool convention_holds;
};

struct CriticalityGap {
  double rate_form;      // q0 + p0 - a0
  double exponent_form;  // (n+s1)/(q+gamma-1) + (n+s2)/(p+gamma-1) - a0
};

struct IntegrabilityThresholds {
  double r_min;
  double s_min;  // +inf when the second branch denominator is <= 0
  bool s_branch_vacuous;
};

/// Slow decay rates (q0, p0); throws DegenerateProduct when pq == (gamma-1)^2.
SlowRates slow_rates(const SystemParams& params);

/// (n - beta*gamma) / (gamma - 1).
double fast_rate(const SystemParams& params);

FastVRateCase fast_v_rate(const SystemParams& params);

ExponentSet exponents(const SystemParams& params);

/// Throws DegenerateProduct unless pq > (gamma-1)^2.
CriticalityGap criticality_gap(const SystemParams& params);

/// Lower bounds of the optimal integrability intervals.  Use the checked
/// variant to get NonpositiveDenominator instead of an infinite s_min.
IntegrabilityThresholds optimal_integrability_thresholds(const SystemParams& params);
IntegrabilityThresholds optimal_integrability_thresholds_checked(const SystemParams& params);

RegimeReport classify(const SystemParams& params);

}  // namespace wolffkit::core
