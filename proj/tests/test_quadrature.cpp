#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wolffkit/error.hpp"
#include "wolffkit/quadrature.hpp"

namespace quad = wolffkit::quad;

TEST_CASE("polynomials up to degree 31 are exact on one panel") {
  const auto r = quad::integrate([](double x) { return std::pow(x, 20) + 3 * x * x; }, 0.0, 1.0, {});
  CHECK(r.value == doctest::Approx(1.0 / 21.0 + 1.0).epsilon(1e-14));
  CHECK(r.intervals == 1);
}

TEST_CASE("endpoint singularities converge by subdivision") {
  const auto r = quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, {});
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  const auto s = quad::integrate([](double x) { return std::log(x); }, 0.0, 1.0, {});
  CHECK(s.value == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("wide positive segments are integrated in log space") {
  quad::Tolerance tol;
  tol.rel = 1e-12;
  const auto r = quad::integrate_segments([](double x) { return 1.0 / (x * x); }, {1.0, 1e12}, tol);
  CHECK(r.value == doctest::Approx(1.0 - 1e-12).epsilon(1e-12));
  const auto s = quad::integrate_segments([](double x) { return std::exp(-x); }, {1e-9, 1.0, 50.0}, tol);
  CHECK(s.value == doctest::Approx(std::exp(-1e-9) - std::exp(-50.0)).epsilon(1e-12));
}

TEST_CASE("breakpoints are sorted and deduplicated") {
  const auto r = quad::integrate_segments([](double x) { return std::abs(x - 0.3); },
                                          {1.0, 0.3, 0.0, 0.3}, {});
  CHECK(r.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
}

TEST_CASE("a divergent integral exhausts the subdivision budget") {
  quad::Tolerance tol;
  tol.max_subdivisions = 50;
  try {
    quad::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, tol);
    FAIL("expected a quadrature failure");
  } catch (const wolffkit::Error& e) {
    CHECK(e.kind() == wolffkit::ErrorKind::QuadratureFailure);
  }
}
