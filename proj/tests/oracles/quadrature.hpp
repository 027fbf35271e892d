#pragma once

#include <functional>

#include "roughint/geometry.hpp"

namespace oracle {

using Fn2 = std::function<double(double, double)>;

/// Signed integral of phi over the triangle (negative for clockwise
/// vertex order), by adaptive subdivision with a degree-5 rule.
double triangle_integral(const Fn2& phi, const roughint::Simplex2& s, double tol = 1e-13, int max_depth = 14);

/// Integral of phi over the disk |x - c| < r in polar coordinates:
/// Gauss-Legendre in the radius on nr panels, trapezoid in the angle.
double disk_integral(const Fn2& phi, roughint::Point2 c, double r, int nr = 64, int ntheta = 1024);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, double* x, double* w);

} // namespace oracle
