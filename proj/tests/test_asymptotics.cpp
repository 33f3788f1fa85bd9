#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wolffkit/asymptotics.hpp"
#include "wolffkit/error.hpp"

using namespace wolffkit;
using asymptotics::Sample;
using core::SystemParams;

namespace {

SystemParams make(int n, double beta, double gamma, double p, double q, double s1, double s2,
                  core::Convention c = core::Convention::Strict) {
  return SystemParams::make(n, beta, gamma, p, q, s1, s2, c);
}

SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(3, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = dim(rng);
  const double gamma = 1.1 + 1.4 * unit(rng);
  const double beta = (0.1 + 0.85 * unit(rng)) * n / gamma;
  const double bg = beta * gamma;
  return make(n, beta, gamma, 0.1 + 6.0 * unit(rng), 0.1 + 6.0 * unit(rng),
              -bg + 0.01 + 4.0 * unit(rng), -bg + 0.01 + 4.0 * unit(rng));
}

std::vector<Sample> synthetic(double lo, double hi, int count, double theta, double kappa) {
  std::vector<Sample> out;
  for (double r : asymptotics::log_spaced(lo, hi, count)) {
    out.push_back({r, 2.5 * std::pow(r, -theta) * std::pow(std::log(r), kappa)});
  }
  return out;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidParams;
}

}  // namespace

TEST_CASE("iteration with pq < (gamma-1)^2 reaches a negative exponent") {
  const auto s = make(5, 1, 2, 0.5, 0.5, 0, 0);
  const auto trace = asymptotics::iterate_liouville(s);
  REQUIRE(std::holds_alternative<asymptotics::DivergesNegative>(trace.verdict));
  CHECK(*core::exponents(s).q0 < 0);
  CHECK(trace.a.front() == 3.0);
}

TEST_CASE("iteration with pq = (gamma-1)^2 decreases linearly") {
  const auto s = make(5, 1, 2, 1, 1, 0, 0);
  const double eta = core::exponents(s).eta0;
  CHECK(eta == 4.0);
  const auto seq = asymptotics::liouville_sequence(s, 3.0, 10);
  for (std::size_t j = 0; j < seq.a.size(); ++j) {
    CHECK(seq.a[j] == doctest::Approx(3.0 - static_cast<double>(j) * eta));
  }
  // First index with a_j < 0 or b_j < 0, predicted from the closed form.
  int predicted = -1;
  for (int j = 0; j < 10 && predicted < 0; ++j) {
    const double a = asymptotics::closed_form_exponent(s, 3.0, j);
    if (a < 0 || asymptotics::next_b(s, a) < 0) predicted = j;
  }
  const auto trace = asymptotics::iterate_liouville(s);
  REQUIRE(std::holds_alternative<asymptotics::DivergesNegative>(trace.verdict));
  CHECK(std::get<asymptotics::DivergesNegative>(trace.verdict).index == predicted);
  CHECK(predicted == 1);
}

TEST_CASE("admissible parameters: the exponents grow without a contradiction") {
  const auto s = make(5, 1, 2, 3, 3, 0, 0);
  const auto trace = asymptotics::iterate_liouville(s, 3.0);
  REQUIRE(std::holds_alternative<asymptotics::Stalls>(trace.verdict));
  CHECK(std::get<asymptotics::Stalls>(trace.verdict).iterations == asymptotics::kDefaultMaxIter);
  // iter_ratio = 9 and q0 = 1, so a_j = 9^j (3 - 1) + 1.
  for (int j = 0; j <= 12; ++j) {
    CHECK(trace.a[static_cast<std::size_t>(j)] == doctest::Approx(2.0 * std::pow(9.0, j) + 1.0));
  }
  CHECK(trace.closed_form_check <= 1e-10 * (1 + std::abs(trace.a.back())));
}

TEST_CASE("iteration converges when the fixed point is positive and attracting") {
  const auto s = make(5, 1, 2, 0.5, 0.5, -5, -5, core::Convention::AllowNonstrict);
  CHECK(*core::exponents(s).q0 == doctest::Approx(6.0));
  const auto trace = asymptotics::iterate_liouville(s);
  REQUIRE(std::holds_alternative<asymptotics::ConvergesTo>(trace.verdict));
  CHECK(std::get<asymptotics::ConvergesTo>(trace.verdict).limit == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("closed form matches the recursion over 40 steps") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> start(-2.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const SystemParams s = random_params(rng);
    const auto seq = asymptotics::liouville_sequence(s, start(rng), 40);
    double scale = 1.0;
    for (double a : seq.a) scale = std::max(scale, 1.0 + std::abs(a));
    CHECK(seq.closed_form_check <= 1e-10 * scale);
  }
  // Ratio within 1e-3 of one uses the expm1 form.
  const auto near_one = make(5, 1, 2, 1.0004, 1.0, 0, 0);
  const auto seq = asymptotics::liouville_sequence(near_one, 3.0, 40);
  CHECK(seq.closed_form_check <= 1e-12 * 200);
}

TEST_CASE("q0 is a fixed point of the recursion") {
  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 500) {
    const SystemParams s = random_params(rng);
    const auto e = core::exponents(s);
    if (!e.q0) continue;
    const double q0 = *e.q0;
    const double step = asymptotics::next_a(s, asymptotics::next_b(s, q0));
    CHECK(step == doctest::Approx(q0).epsilon(1e-12).scale(1.0));
    for (int j = 0; j <= 40; ++j) {
      CHECK(asymptotics::closed_form_exponent(s, q0, j) == doctest::Approx(q0).epsilon(1e-12).scale(1.0));
    }
    ++checked;
  }
  const auto s = make(5, 1, 2, 3, 3, 0, 0);
  const auto trace = asymptotics::iterate_liouville(s, 1.0);
  REQUIRE(std::holds_alternative<asymptotics::ConvergesTo>(trace.verdict));
  CHECK(std::get<asymptotics::ConvergesTo>(trace.verdict).limit == 1.0);
}

TEST_CASE("iteration rejects an empty budget") {
  CHECK(kind_of([] { asymptotics::iterate_liouville(make(5, 1, 2, 3, 3, 0, 0), 3.0, 0); }) ==
        ErrorKind::InvalidParams);
}

TEST_CASE("fit_rate recovers an exact power law") {
  const auto samples = synthetic(10, 1e6, 20, 2.0, 0.0);
  const auto fit = asymptotics::fit_rate(samples, false);
  CHECK(fit.theta == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.kappa == 0.0);
  CHECK(fit.r_lo == 10.0);
  CHECK(fit.r_hi == doctest::Approx(1e6));
}

TEST_CASE("fit_rate recovers a logarithmic correction over a wide window") {
  const auto samples = synthetic(1e2, 1e12, 40, 3.0, 1.0);
  const auto fit = asymptotics::fit_rate(samples, true);
  CHECK(std::abs(fit.theta - 3.0) <= 0.01);
  CHECK(std::abs(fit.kappa - 1.0) <= 0.05);
  CHECK(fit.condition < asymptotics::kMaxCondition);
}

TEST_CASE("ignoring the log factor biases theta low") {
  const auto samples = synthetic(1e3, 1e4, 20, 3.0, 1.0);
  CHECK(asymptotics::fit_rate(samples, false).theta < 3.0);
}

TEST_CASE("fit_rate recovers the fast-rate families for gamma in {1.5, 2}") {
  for (double gamma : {1.5, 2.0}) {
    const double k = 1.0 / (gamma - 1.0);
    const double a0 = (5.0 - gamma) * k;
    for (double kappa : {0.0, k}) {
      const auto fit = asymptotics::fit_rate(synthetic(1e3, 1e9, 40, a0, kappa), true);
      CHECK(fit.theta == doctest::Approx(a0).epsilon(1e-8));
      CHECK(fit.kappa == doctest::Approx(kappa).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("fit_rate flags a window too narrow to separate log from power") {
  const auto samples = synthetic(1e3, 1.5e3, 40, 3.0, 1.0);
  CHECK(kind_of([&] { asymptotics::fit_rate(samples, true); }) == ErrorKind::IllConditioned);
  CHECK_NOTHROW(asymptotics::fit_rate(samples, false));
}

TEST_CASE("fit_rate preconditions") {
  CHECK(kind_of([] { asymptotics::fit_rate(synthetic(10, 1e3, 7, 1, 0), false); }) ==
        ErrorKind::InvalidParams);
  CHECK(kind_of([] { asymptotics::fit_rate(synthetic(5, 1e3, 10, 1, 0), false); }) ==
        ErrorKind::InvalidParams);
  auto samples = synthetic(10, 1e3, 10, 1, 0);
  std::swap(samples[3], samples[4]);
  CHECK(kind_of([&] { asymptotics::fit_rate(samples, false); }) == ErrorKind::InvalidParams);
  samples = synthetic(10, 1e3, 10, 1, 0);
  samples[2].v = 0.0;
  CHECK(kind_of([&] { asymptotics::fit_rate(samples, false); }) == ErrorKind::InvalidParams);
}

TEST_CASE("fit_rate is deterministic") {
  const auto samples = synthetic(1e3, 1e9, 40, 2.7, 0.4);
  const auto a = asymptotics::fit_rate(samples, true);
  const auto b = asymptotics::fit_rate(samples, true);
  CHECK(a.theta == b.theta);
  CHECK(a.kappa == b.kappa);
  CHECK(a.residual == b.residual);
}

TEST_CASE("lambda limit values") {
  CHECK(asymptotics::lambda_limit_value(5, 1, 2, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(asymptotics::lambda_limit_value(5, 1, 2, 2) == doctest::Approx(1.0 / 24.0));
}

TEST_CASE("lambda lhs matches the incomplete gamma closed form") {
  const std::vector<double> radii{1e2, 1e4, 1e6, 1e9, 1e15};
  for (double gamma : {1.5, 2.0}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const auto pts = asymptotics::lambda_limit_check(5, 1, gamma, lambda, radii);
      REQUIRE(pts.size() == radii.size());
      for (const auto& pt : pts) {
        CHECK(pt.lhs == doctest::Approx(oracles::lambda_lhs(5, 1, gamma, lambda, pt.r)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("lambda lhs approaches the limit from above") {
  for (double lambda : {1.0, 2.0}) {
    const double limit = asymptotics::lambda_limit_value(5, 1, 2, lambda);
    const std::vector<double> radii{1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};
    const auto pts = asymptotics::lambda_limit_check(5, 1, 2, lambda, radii);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(pts[i].lhs > limit);
      if (i > 0) {
        CHECK(pts[i].lhs < pts[i - 1].lhs);
        CHECK(std::abs(pts[i].lhs - limit) < std::abs(pts[i - 1].lhs - limit));
      }
    }
  }
  // The leading correction is lambda^{-a0}/a0 * k/(a0 ln(lambda r)): about
  // 2.4% at r = 1e6 for lambda = 1.
  const auto at = asymptotics::lambda_limit_check(5, 1, 2, 1.0, std::vector<double>{1e6});
  CHECK(at[0].lhs / (1.0 / 3.0) - 1.0 == doctest::Approx(0.0241).epsilon(0.01));
}

TEST_CASE("lambda check preconditions") {
  const std::vector<double> bad{10.0, 5.0};
  CHECK(kind_of([&] { asymptotics::lambda_limit_check(5, 1, 2, 1, bad); }) == ErrorKind::InvalidParams);
  const std::vector<double> below{0.5};
  CHECK(kind_of([&] { asymptotics::lambda_limit_check(5, 1, 2, 1, below); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([&] { asymptotics::lambda_limit_check(5, 1, 2, 0, below); }) == ErrorKind::InvalidParams);
}
