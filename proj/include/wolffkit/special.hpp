#pragma once

namespace wolffkit::special {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// Continued fraction (modified Lentz) with the symmetry
/// I_x(a,b) = 1 - I_{1-x}(b,a) applied so the fraction converges fast.
/// Relative accuracy is about 1e-14.
double incomplete_beta(double a, double b, double x);

/// Surface area of the unit sphere S^{n-1} in R^n.
double unit_sphere_area(int n);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace wolffkit::special
