#pragma once

// Exponent recursion behind the nonexistence argument, and decay-rate
// estimation from sampled potential values.

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "wolffkit/core.hpp"

namespace wolffkit::asymptotics {

/// First index j with a_j < 0 or b_j < 0.
struct DivergesNegative {
  int index;
};
struct ConvergesTo {
  double limit;
};
/// Iteration budget exhausted, or the exponents left the finite range.
struct Stalls {
  int iterations;
};
using Verdict = std::variant<DivergesNegative, ConvergesTo, Stalls>;

std::string_view name_of(const Verdict& v);

struct IterationTrace {
  std::vector<double> a;
  std::vector<double> b;
  Verdict verdict;
  double closed_form_check;  // max_j |a_j(recursive) - a_j(closed form)|
};

inline constexpr int kDefaultMaxIter = 200;
inline constexpr double kConvergenceRelTol = 1e-14;

/// b = (p a - sigma2 - beta*gamma) / (gamma - 1).
double next_b(const core::SystemParams& params, double a);
/// a' = (q b - sigma1 - beta*gamma) / (gamma - 1).
double next_a(const core::SystemParams& params, double b);

/// a_j in closed form: r^j (a_start - q0) + q0 with r = pq/(gamma-1)^2, and
/// a_start - j eta0/(gamma-1)^2 when r = 1.  Near r = 1 the geometric sum is
/// evaluated with expm1/log1p so the two branches join smoothly.
double closed_form_exponent(const core::SystemParams& params, double a_start, int j);

/// Exactly `steps` updates of the recursion with no stop rule.  The verdict
/// is always Stalls{steps} unless a non-finite value appears.
IterationTrace liouville_sequence(const core::SystemParams& params, double a_start, int steps);

/// Runs the recursion from a_start (default a0).  Stops at the first
/// negative exponent or once |a_{j+1} - a_j| < 1e-14 (1 + |a_j|).  Gives up
/// after max_iter updates.
IterationTrace iterate_liouville(const core::SystemParams& params,
                                 std::optional<double> a_start = std::nullopt,
                                 int max_iter = kDefaultMaxIter);

struct Sample {
  double r;
  double v;
};

/// v ~ C r^{-theta} (log r)^{kappa}.
struct RateFit {
  double theta = 0.0;
  double kappa = 0.0;  // 0 when fitted without the log regressor
  double c = 0.0;      // log C
  double residual = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  double condition = 0.0;  // cond(X^T X) of the design matrix
  bool with_log = false;
};

inline constexpr double kMaxCondition = 1e8;
inline constexpr int kMinFitSamples = 8;
inline constexpr double kMinFitRadius = 10.0;

/// Ordinary least squares of log v on {1, -log r, log log r} (the last
/// column dropped when allow_log is false).  Throws InvalidParams on bad
/// samples and IllConditioned when cond(X^T X) > kMaxCondition.
RateFit fit_rate(std::span<const Sample> samples, bool allow_log);

/// count log-spaced points from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int count);

struct LambdaPoint {
  double r;
  double lhs;
};

/// ((gamma-1)/(n-beta*gamma)) lambda^{-(n-beta*gamma)/(gamma-1)}.
double lambda_limit_value(int n, double beta, double gamma, double lambda);

/// r^{a0} (ln lambda r)^{-k} int_{lambda r}^inf (ln t / t^{n-beta*gamma})^k dt/t
/// with k = 1/(gamma-1), by direct quadrature.  Requires lambda r > 1.
std::vector<LambdaPoint> lambda_limit_check(int n, double beta, double gamma, double lambda,
                                            std::span<const double> radii,
                                            double rel_tol = 1e-12);

}  // namespace wolffkit::asymptotics
