#pragma once

#include <functional>

#include "roughint/fields.hpp"
#include "roughint/geometry.hpp"

namespace roughint {

struct SegmentIntegralResult {
    double value = 0.0;
    int level = 0;
    /// |S_level - S_(level-1)|; 0 at level 0.
    double cauchy_increment = 0.0;
};

/// Left-point sum of u dv over the dyadic partition of seg into 2^level
/// pieces, accumulated in double-double.
SegmentIntegralResult young_integral(const ScalarField& u, const ScalarField& v, const Simplex1& seg, int level);

/// Trapezoid sum 1/2 (u_i + u_{i+1}) (v_{i+1} - v_i); same limit as the
/// left-point sum, exact for affine u, v.
SegmentIntegralResult trapezoid_integral(const ScalarField& u, const ScalarField& v, const Simplex1& seg, int level);

using LineIntegrand = std::function<double(Point2, double)>;

/// sum 1/2 (F(x_i, g_i) + F(x_{i+1}, g_{i+1})) (g_{i+1} - g_i)
SegmentIntegralResult strat1d_sum(const LineIntegrand& F, const ScalarField& g, const Simplex1& seg, int level);
/// sum F(x_i, g_i) (g_{i+1} - g_i)
SegmentIntegralResult ito1d_sum(const LineIntegrand& F, const ScalarField& g, const Simplex1& seg, int level);
/// sum (g_{i+1} - g_i)^2
double quadratic_variation(const ScalarField& g, const Simplex1& seg, int level);

/// Left-point Young sums of g1 dg2 around the closed loop p0 -> p1 -> p2 -> p0.
double boundary_young_integral(const ScalarField& g1, const ScalarField& g2, const Simplex2& s, int level);

/// Largest level accepted by the 1D sums (2^level evaluations).
inline constexpr int kMaxSegmentLevel = 26;

} // namespace roughint
