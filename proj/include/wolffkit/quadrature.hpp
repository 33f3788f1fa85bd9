#pragma once

// Adaptive 21-point Gauss-Kronrod quadrature with global error control,
// plus a breakpoint-aware driver that integrates wide positive segments in
// the logarithmic variable.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "wolffkit/error.hpp"

namespace wolffkit::quad {

struct Tolerance {
  double rel = 1e-10;
  double abs = 0.0;
  int max_subdivisions = 2000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.00000000000000000e+00, 1.48874338981631211e-01, 2.94392862701460198e-01,
    4.33395394129247191e-01, 5.62757134668604683e-01, 6.79409568299024406e-01,
    7.80817726586416897e-01, 8.65063366688984511e-01, 9.30157491355708226e-01,
    9.73906528517171720e-01, 9.95657163025808081e-01};

inline constexpr std::array<double, 11> kKronrodWeights = {
    1.49445554002916906e-01, 1.47739104901338491e-01, 1.42775938577060081e-01,
    1.34709217311473326e-01, 1.23491976262065851e-01, 1.09387158802297642e-01,
    9.31254545836976055e-02, 7.50396748109199528e-02, 5.47558965743519960e-02,
    3.25581623079647275e-02, 1.16946388673718743e-02};

// 10-point Gauss weights for the odd Kronrod nodes (1, 3, 5, 7, 9).
inline constexpr std::array<double, 5> kGaussWeights = {
    2.95524224714752870e-01, 2.69266719309996355e-01, 2.19086362515982044e-01,
    1.49451349150580593e-01, 6.66713443086881376e-02};

struct Interval {
  double a;
  double b;
  double value;
  double error;
};

template <class F>
Interval gk21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> fv{};
  fv[0] = f(center);
  for (int i = 1; i <= 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    fv[2 * i - 1] = f(center - dx);
    fv[2 * i] = f(center + dx);
  }
  double kron = kKronrodWeights[0] * fv[0];
  double gauss = 0.0;
  double res_abs = kKronrodWeights[0] * std::abs(fv[0]);
  for (int i = 1; i <= 10; ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    kron += kKronrodWeights[i] * pair;
    res_abs += kKronrodWeights[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  const double mean = 0.5 * kron;
  double res_asc = kKronrodWeights[0] * std::abs(fv[0] - mean);
  for (int i = 1; i <= 10; ++i) {
    res_asc += kKronrodWeights[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
  }
  const double h = std::abs(half);
  double err = std::abs((kron - gauss) * half);
  res_asc *= h;
  res_abs *= h;
  // QUADPACK error scaling.
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * res_abs, err);
  }
  return {a, b, kron * half, err};
}

inline bool heap_less(const Interval& x, const Interval& y) { return x.error < y.error; }

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace detail

/// Adaptive integration of f over [a, b].  Throws QuadratureFailure if the
/// tolerance is not met within tol.max_subdivisions intervals.  Intervals
/// that can no longer be bisected in floating point are accepted as is.
template <class F>
Result integrate(F&& f, double a, double b, const Tolerance& tol) {
  if (a == b) return {};
  std::vector<detail::Interval> heap;
  heap.push_back(detail::gk21(f, a, b));
  double value = heap.front().value;
  double error = heap.front().error;
  int count = 1;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (;;) {
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::QuadratureFailure,
                  "non-finite integrand on [" + detail::num(a) + ", " + detail::num(b) + "]");
    }
    const double target = std::max(tol.abs, tol.rel * std::abs(value));
    if (error <= target || heap.empty()) return {value, error, count};
    if (count >= tol.max_subdivisions) {
      throw Error(ErrorKind::QuadratureFailure,
                  "tolerance not reached within " + std::to_string(tol.max_subdivisions) +
                      " subdivisions on [" + detail::num(a) + ", " + detail::num(b) +
                      "] (estimate " + detail::num(value) + ", error " + detail::num(error) + ")");
    }
    std::pop_heap(heap.begin(), heap.end(), detail::heap_less);
    const detail::Interval worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
    if (std::abs(worst.b - worst.a) <= 64.0 * eps * scale || mid <= std::min(worst.a, worst.b) ||
        mid >= std::max(worst.a, worst.b)) {
      // Cannot bisect further; its error stays in the running total.
      error -= worst.error;
      continue;
    }
    const detail::Interval left = detail::gk21(f, worst.a, mid);
    const detail::Interval right = detail::gk21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    error = std::max(error, 0.0);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), detail::heap_less);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), detail::heap_less);
    ++count;
  }
}

/// Ratio above which a positive segment is integrated in log space.
inline constexpr double kLogSpanRatio = 4.0;

/// Integrates f piecewise between the breakpoints pts (sorted here,
/// duplicates dropped).  Segments [a, b] with
/// a > 0 and b/a > kLogSpanRatio use r = e^s.  Each segment is held to the
/// relative tolerance independently, which bounds the total for integrands
/// of one sign.
template <class F>
Result integrate_segments(F&& f, std::vector<double> pts, const Tolerance& tol) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Result total;
  if (pts.size() < 2) return total;
  Tolerance seg_tol = tol;
  seg_tol.abs = tol.abs / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    Result r;
    if (a > 0.0 && b / a > kLogSpanRatio) {
      auto g = [&f](double s) {
        const double x = std::exp(s);
        return f(x) * x;
      };
      r = integrate(g, std::log(a), std::log(b), seg_tol);
    } else {
      r = integrate(f, a, b, seg_tol);
    }
    total.value += r.value;
    total.error += r.error;
    total.intervals += r.intervals;
  }
  return total;
}

}  // namespace wolffkit::quad
