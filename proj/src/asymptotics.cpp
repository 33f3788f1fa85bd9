#include "wolffkit/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "wolffkit/error.hpp"
#include "wolffkit/quadrature.hpp"

namespace wolffkit::asymptotics {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double max_closed_form_deviation(const core::SystemParams& params, const std::vector<double>& a) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double closed = closed_form_exponent(params, a.front(), static_cast<int>(j));
    const double dev = std::abs(a[j] - closed);
    if (std::isnan(dev)) return dev;
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace

std::string_view name_of(const Verdict& v) {
  return std::visit(Overloaded{[](const DivergesNegative&) { return std::string_view("DivergesNegative"); },
                               [](const ConvergesTo&) { return std::string_view("ConvergesTo"); },
                               [](const Stalls&) { return std::string_view("Stalls"); }},
                    v);
}

double next_b(const core::SystemParams& s, double a) {
  return (s.p() * a - s.sigma2() - s.beta_gamma()) / s.gm1();
}

double next_a(const core::SystemParams& s, double b) {
  return (s.q() * b - s.sigma1() - s.beta_gamma()) / s.gm1();
}

double closed_form_exponent(const core::SystemParams& s, double a_start, int j) {
  const double g2 = s.gm1() * s.gm1();
  const double eta = core::exponents(s).eta0;
  const double ratio = s.p() * s.q() / g2;
  // ratio - 1 formed from the product to avoid cancellation.
  const double ratio_m1 = (s.p() * s.q() - g2) / g2;
  if (j == 0) return a_start;
  if (std::abs(ratio_m1) > 1e-3) {
    const double fixed = eta / (s.p() * s.q() - g2);
    return std::pow(ratio, j) * (a_start - fixed) + fixed;
  }
  // sum_{i<j} ratio^i
  const double geometric =
      ratio_m1 == 0.0 ? static_cast<double>(j) : std::expm1(j * std::log1p(ratio_m1)) / ratio_m1;
  return std::pow(ratio, j) * a_start - eta / g2 * geometric;
}

IterationTrace liouville_sequence(const core::SystemParams& s, double a_start, int steps) {
  if (steps < 0) throw Error(ErrorKind::InvalidParams, "steps must be >= 0");
  IterationTrace trace{{a_start}, {}, Stalls{steps}, 0.0};
  for (int k = 0; k < steps; ++k) {
    const double b = next_b(s, trace.a.back());
    trace.b.push_back(b);
    const double a = next_a(s, b);
    trace.a.push_back(a);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      trace.verdict = Stalls{k + 1};
      break;
    }
  }
  trace.b.push_back(next_b(s, trace.a.back()));
  trace.closed_form_check = max_closed_form_deviation(s, trace.a);
  return trace;
}

IterationTrace iterate_liouville(const core::SystemParams& s, std::optional<double> a_start,
                                 int max_iter) {
  if (max_iter < 1) throw Error(ErrorKind::InvalidParams, "max_iter must be >= 1");
  const double start = a_start.value_or(core::fast_rate(s));
  if (!std::isfinite(start)) throw Error(ErrorKind::InvalidParams, "a_start must be finite");

  IterationTrace trace{{start}, {}, Stalls{max_iter}, 0.0};
  for (int k = 0;; ++k) {
    const double a = trace.a.back();
    const double b = next_b(s, a);
    trace.b.push_back(b);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      trace.verdict = Stalls{k};
      break;
    }
    if (a < 0.0 || b < 0.0) {
      trace.verdict = DivergesNegative{k};
      break;
    }
    if (k == max_iter) {
      trace.verdict = Stalls{max_iter};
      break;
    }
    const double a_next = next_a(s, b);
    trace.a.push_back(a_next);
    if (std::abs(a_next - a) < kConvergenceRelTol * (1.0 + std::abs(a))) {
      trace.b.push_back(next_b(s, a_next));
      trace.verdict = ConvergesTo{a_next};
      break;
    }
  }
  trace.closed_form_check = max_closed_form_deviation(s, trace.a);
  return trace;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 2) {
    throw Error(ErrorKind::InvalidParams, "log_spaced needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double l0 = std::log(lo);
  const double step = (std::log(hi) - l0) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::exp(l0 + step * i);
  out.front() = lo;
  out.back() = hi;
  return out;
}

RateFit fit_rate(std::span<const Sample> samples, bool allow_log) {
  if (samples.size() < static_cast<std::size_t>(kMinFitSamples)) {
    throw Error(ErrorKind::InvalidParams,
                "fit_rate needs at least " + std::to_string(kMinFitSamples) + " samples");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    if (!(s.v > 0) || !std::isfinite(s.v) || !std::isfinite(s.r)) {
      throw Error(ErrorKind::InvalidParams, "fit_rate needs finite positive values");
    }
    if (i > 0 && !(s.r > samples[i - 1].r)) {
      throw Error(ErrorKind::InvalidParams, "fit_rate needs strictly increasing radii");
    }
  }
  if (samples.front().r < kMinFitRadius) {
    throw Error(ErrorKind::InvalidParams, "fit_rate window must start at r >= 10");
  }

  const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index cols = allow_log ? 3 : 2;
  Eigen::MatrixXd x(m, cols);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lr = std::log(samples[static_cast<std::size_t>(i)].r);
    x(i, 0) = 1.0;
    x(i, 1) = -lr;
    if (allow_log) x(i, 2) = std::log(lr);
    y(i) = std::log(samples[static_cast<std::size_t>(i)].v);
  }

  const Eigen::MatrixXd gram = x.transpose() * x;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(gram).singularValues();
  const double condition = sv(0) / sv(sv.size() - 1);
  if (!(condition <= kMaxCondition)) {
    throw Error(ErrorKind::IllConditioned,
                "rate regression is ill-conditioned (cond = " + std::to_string(condition) +
                    "); widen the radius window");
  }

  const Eigen::VectorXd coef = x.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd resid = y - x * coef;

  RateFit fit;
  fit.c = coef(0);
  fit.theta = coef(1);
  fit.kappa = allow_log ? coef(2) : 0.0;
  fit.residual = std::sqrt(resid.squaredNorm() / static_cast<double>(m));
  fit.r_lo = samples.front().r;
  fit.r_hi = samples.back().r;
  fit.condition = condition;
  fit.with_log = allow_log;
  return fit;
}

double lambda_limit_value(int n, double beta, double gamma, double lambda) {
  const double a0 = (n - beta * gamma) / (gamma - 1.0);
  return (gamma - 1.0) / (n - beta * gamma) * std::pow(lambda, -a0);
}

std::vector<LambdaPoint> lambda_limit_check(int n, double beta, double gamma, double lambda,
                                            std::span<const double> radii, double rel_tol) {
  if (!(lambda > 0)) throw Error(ErrorKind::InvalidParams, "lambda must be > 0");
  if (!(gamma > 1) || !(beta > 0) || !(beta * gamma < n)) {
    throw Error(ErrorKind::InvalidParams, "need gamma > 1, beta > 0 and beta*gamma < n");
  }
  const double k = 1.0 / (gamma - 1.0);
  const double a0 = (n - beta * gamma) * k;

  std::vector<LambdaPoint> out;
  out.reserve(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (i > 0 && !(r > radii[i - 1])) {
      throw Error(ErrorKind::InvalidParams, "radii must be strictly increasing");
    }
    const double big_s = std::log(lambda * r);
    if (!(big_s > 0)) throw Error(ErrorKind::InvalidParams, "lambda * r must be > 1");
    // With log t = S + x/a0 the scaled integral is
    // lambda^{-a0}/a0 int_0^inf (1 + x/(a0 S))^k e^{-x} dx.
    auto integrand = [&](double x) { return std::exp(k * std::log1p(x / (a0 * big_s)) - x); };
    std::vector<double> pts{0.0};
    for (double x = 1.0; x <= 1024.0; x *= 2.0) pts.push_back(x);
    quad::Tolerance tol;
    tol.rel = rel_tol;
    const double integral = quad::integrate_segments(integrand, pts, tol).value;
    out.push_back({r, std::pow(lambda, -a0) / a0 * integral});
  }
  return out;
}

}  // namespace wolffkit::asymptotics
