#pragma once

// Test densities and radii for comparing Wolff and Riesz potentials.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wolffkit/wolff.hpp"

namespace riesz_cases {

struct Density {
  std::string name;
  wolffkit::wolff::RadialDensity f;
  std::vector<double> breaks;
};

inline std::vector<Density> densities() {
  using wolffkit::wolff::RadialDensity;
  const double inf = std::numeric_limits<double>::infinity();
  return {
      {"(1+r^2)^-2", wolffkit::wolff::power_pair_density(2.0, 0.0, 1.0), {1.0}},
      {"r^-1 (1+r^2)^-2", wolffkit::wolff::power_pair_density(2.0, -1.0, 1.0), {1.0}},
      {"r^0.5 (1+r^2)^-3", wolffkit::wolff::power_pair_density(3.0, 0.5, 1.0), {1.0}},
      {"1_{B_1}", wolffkit::wolff::ball_indicator_density(1.0), {1.0}},
      {"exp(-r^2)", RadialDensity([](double r) { return std::exp(-r * r); }, 0.0, inf, {1.0}),
       {1.0}},
  };
}

inline const std::vector<double> kRadii{0.1, 0.5, 1.0, 3.0, 20.0};

/// I_alpha f(rho) for alpha in {1, 2}.
inline double riesz(const Density& d, int n, int alpha, double rho) {
  auto f = [&d](double r) { return d.f(r); };
  return alpha == 2 ? oracles::riesz2(f, n, rho, d.breaks) : oracles::riesz1(f, n, rho, d.breaks);
}

}  // namespace riesz_cases
