#include "roughint/young1d.hpp"

#include <cmath>
#include <vector>

#include "roughint/summation.hpp"

namespace roughint {

namespace {

void check_level(int level) {
    if (level < 0) throw InvalidArgument("segment level must be >= 0");
    if (level > kMaxSegmentLevel) throw BudgetExceeded("segment level exceeds budget");
}

// Partition nodes start + (i/2^level) (end - start), with the end point
// taken verbatim; the even nodes of a level are bitwise the nodes of the
// previous level.
std::vector<Point2> nodes(const Simplex1& seg, int level) {
    const std::size_t n = std::size_t{1} << level;
    const double h = std::ldexp(1.0, -level);
    std::vector<Point2> out(n + 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lerp(seg, static_cast<double>(i) * h);
    out[n] = seg.v[1];
    return out;
}

std::vector<double> values(const ScalarField& f, const std::vector<Point2>& pts) {
    std::vector<double> x1(pts.size()), x2(pts.size()), out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        x1[i] = pts[i].x1;
        x2[i] = pts[i].x2;
    }
    f.eval_many(x1.data(), x2.data(), out.data(), pts.size());
    return out;
}

// Adds (a + b) * (d - c) with every intermediate kept in double-double.
void add_sum_times_diff(DDSum& acc, double a, double b, double c, double d) {
    double s, se, e, ee;
    two_sum(a, b, s, se);
    two_sum(d, -c, e, ee);
    acc.add_product(s, e);
    acc.add_product(s, ee);
    acc.add_product(se, e);
    acc.add_product(se, ee);
}

void add_times_diff(DDSum& acc, double a, double c, double d) {
    double e, ee;
    two_sum(d, -c, e, ee);
    acc.add_product(a, e);
    acc.add_product(a, ee);
}

SegmentIntegralResult finish(const DDSum& fine, const DDSum& coarse, int level, double scale) {
    SegmentIntegralResult r;
    r.value = scale * fine.value();
    r.level = level;
    r.cauchy_increment = level == 0 ? 0.0 : std::abs(r.value - scale * coarse.value());
    return r;
}

// Left-point (weights u_i) or trapezoid (weights u_i + u_{i+1}, halved) sums
// at level and level-1 in one pass.
SegmentIntegralResult riemann(const std::vector<double>& u, const std::vector<double>& v, int level, bool trapezoid) {
    DDSum fine, coarse;
    const std::size_t n = v.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (trapezoid)
            add_sum_times_diff(fine, u[i], u[i + 1], v[i], v[i + 1]);
        else
            add_times_diff(fine, u[i], v[i], v[i + 1]);
    }
    if (level > 0) {
        for (std::size_t i = 0; i + 2 <= n; i += 2) {
            if (trapezoid)
                add_sum_times_diff(coarse, u[i], u[i + 2], v[i], v[i + 2]);
            else
                add_times_diff(coarse, u[i], v[i], v[i + 2]);
        }
    }
    return finish(fine, coarse, level, trapezoid ? 0.5 : 1.0);
}

} // namespace

SegmentIntegralResult young_integral(const ScalarField& u, const ScalarField& v, const Simplex1& seg, int level) {
    check_level(level);
    const auto pts = nodes(seg, level);
    return riemann(values(u, pts), values(v, pts), level, false);
}

SegmentIntegralResult trapezoid_integral(const ScalarField& u, const ScalarField& v, const Simplex1& seg, int level) {
    check_level(level);
    const auto pts = nodes(seg, level);
    return riemann(values(u, pts), values(v, pts), level, true);
}

SegmentIntegralResult strat1d_sum(const LineIntegrand& F, const ScalarField& g, const Simplex1& seg, int level) {
    check_level(level);
    const auto pts = nodes(seg, level);
    const auto gv = values(g, pts);
    std::vector<double> fv(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) fv[i] = F(pts[i], gv[i]);
    return riemann(fv, gv, level, true);
}

SegmentIntegralResult ito1d_sum(const LineIntegrand& F, const ScalarField& g, const Simplex1& seg, int level) {
    check_level(level);
    const auto pts = nodes(seg, level);
    const auto gv = values(g, pts);
    std::vector<double> fv(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) fv[i] = F(pts[i], gv[i]);
    return riemann(fv, gv, level, false);
}

double quadratic_variation(const ScalarField& g, const Simplex1& seg, int level) {
    check_level(level);
    const auto gv = values(g, nodes(seg, level));
    DDSum acc;
    for (std::size_t i = 0; i + 1 < gv.size(); ++i) {
        const double d = gv[i + 1] - gv[i];
        acc.add_product(d, d);
    }
    return acc.value();
}

double boundary_young_integral(const ScalarField& g1, const ScalarField& g2, const Simplex2& s, int level) {
    DDSum acc;
    acc.add(young_integral(g1, g2, Simplex1{{s.v[0], s.v[1]}}, level).value);
    acc.add(young_integral(g1, g2, Simplex1{{s.v[1], s.v[2]}}, level).value);
    acc.add(young_integral(g1, g2, Simplex1{{s.v[2], s.v[0]}}, level).value);
    return acc.value();
}

} // namespace roughint
