#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>

#include "roughint/fields.hpp"
#include "roughint/geometry.hpp"

namespace roughint {

/// |w(s)| <= C1 diam(s)^gamma1 on 2-simplices, |dw(s)| <= C2 diam(s)^gamma2 on 3-simplices.
struct GermBounds {
    double gamma1 = 0.0;
    double C1 = 0.0;
    double gamma2 = 0.0;
    double C2 = 0.0;
};

struct FormTriple {
    ScalarField f;
    ScalarField g1;
    ScalarField g2;

    double alpha() const { return f.hoelder_exponent(); }
    double beta1() const { return g1.hoelder_exponent(); }
    double beta2() const { return g2.hoelder_exponent(); }
    double exponent_sum() const { return alpha() + beta1() + beta2(); }
    /// alpha + beta1 + beta2 > 2
    bool certified_regime() const { return exponent_sum() > 2.0; }
};

/// Fills f, g1, g2 at n points. Lets the lattice summation evaluate each
/// field once per node instead of once per incident triangle.
class NodeEvaluator {
public:
    virtual ~NodeEvaluator() = default;
    virtual void eval(const double* x1, const double* x2, std::size_t n, double* f, double* g1, double* g2) const = 0;
};

std::shared_ptr<const NodeEvaluator> node_evaluator(const FormTriple& t);

enum class GermKind { Strat, Ito, Zust, Custom };

struct Germ2 {
    std::function<double(const Simplex2&)> eval;
    bool is_alternating = false;
    std::optional<GermBounds> bounds;
    GermKind kind = GermKind::Custom;
    /// Set for strat and ito germs; enables lattice summation.
    std::shared_ptr<const NodeEvaluator> nodes;

    double operator()(const Simplex2& s) const { return eval(s); }
};

/// Sorts the vertices lexicographically; returns the sorted simplex and the
/// sign of the permutation, or 0 when two vertices coincide.
std::pair<Simplex2, double> canonical_order(const Simplex2& s);

/// 1/2 * ((f0+f1+f2)/3) * det, det over the edges leaving vertex 0.
double strat_value(const std::array<double, 3>& f, const std::array<double, 3>& g1, const std::array<double, 3>& g2);
double ito_value(const std::array<double, 3>& f, const std::array<double, 3>& g1, const std::array<double, 3>& g2);

/// Certified strat bounds: (b1+b2, |f|_inf [g1][g2], a+b1+b2, 8 [f][g1][g2]).
GermBounds strat_bounds(const FormTriple& t);

Germ2 strat_germ(const FormTriple& t);
Germ2 ito_germ(const FormTriple& t);
/// f(p) times the boundary integral of g1 dg2 around the triangle, with
/// trapezoid sums at 2^boundary_level points per side.
Germ2 zust_germ(const FormTriple& t, int boundary_level);

/// (1/6) det [df; dg1; dg2] over the edges [pq], [pr], [ps].
double delta_strat_det(const FormTriple& t, const Simplex3& s);

struct BoundCheck {
    double value = 0.0;
    double bound = 0.0;
    /// Rounding allowance of the computed value.
    double slack = 0.0;
    bool holds() const { return value <= bound + slack; }
};

struct TriangleBoundChecks {
    BoundCheck ito_strat_gap;  ///< |strat - ito| <= 2 [f][g1][g2] diam^(a+b1+b2)
    BoundCheck strat_magnitude; ///< |strat| <= |f|_inf [g1][g2] diam^(b1+b2)
};

TriangleBoundChecks germ_bound_check(const FormTriple& t, const Simplex2& s);
/// |d strat| <= 8 [f][g1][g2] diam^(a+b1+b2)
BoundCheck germ_bound_check(const FormTriple& t, const Simplex3& s);
/// |delta_strat_det| against a given bound, with its rounding slack.
BoundCheck delta_det_check(const FormTriple& t, const Simplex3& s, double bound);

} // namespace roughint
