#include "roughint/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "roughint/summation.hpp"

namespace roughint {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

using PointKey = std::pair<double, double>;
using SegmentKey = std::pair<PointKey, PointKey>;

PointKey key(Point2 p) { return {p.x1, p.x2}; }

// [ab] and [ba] are the same segment with opposite sign.
void add_segment(std::map<SegmentKey, double>& acc, Point2 a, Point2 b, double c) {
    if (a == b) return;
    if (key(a) < key(b))
        acc[{key(a), key(b)}] += c;
    else
        acc[{key(b), key(a)}] -= c;
}

void add_boundary(std::map<SegmentKey, double>& acc, const Simplex2& s, double c) {
    add_segment(acc, s.v[1], s.v[2], c);
    add_segment(acc, s.v[0], s.v[2], -c);
    add_segment(acc, s.v[0], s.v[1], c);
}

bool on_segment_line(Point2 a, Point2 b, Point2 p) {
    const double scale = std::max({norm(b - a), norm(p - a), 1e-300});
    return std::abs(orient(a, b, p)) <= 1e-12 * scale * scale;
}

void fill_sides(const Simplex1& seg, double c, int depth, std::vector<Simplex2>& out) {
    if (depth == 0) return;
    const Point2 a = seg.v[0], b = seg.v[1], m = midpoint(a, b);
    out.push_back(c > 0 ? Simplex2{{m, a, b}} : Simplex2{{a, m, b}});
    fill_sides(Simplex1{{a, m}}, c, depth - 1, out);
    fill_sides(Simplex1{{m, b}}, c, depth - 1, out);
}

} // namespace

std::string to_string(Scheme s) { return s == Scheme::Strat ? "strat" : "ito"; }

Scheme scheme_from_string(const std::string& s) {
    if (s == "strat") return Scheme::Strat;
    if (s == "ito") return Scheme::Ito;
    throw ConfigError("unknown scheme '" + s + "' (expected strat or ito)");
}

std::string to_string(CertMode m) { return m == CertMode::Strict ? "strict" : "warn"; }

CertMode cert_mode_from_string(const std::string& s) {
    if (s == "strict") return CertMode::Strict;
    if (s == "warn") return CertMode::Warn;
    throw ConfigError("unknown certification mode '" + s + "' (expected strict or warn)");
}

SimplexIntegrand simplex_integrand(const FormTriple& t) {
    SimplexIntegrand in;
    in.nodes = node_evaluator(t);
    in.strat = sewing_params(strat_bounds(t));
    in.ito_gap_C = 2.0 * t.f.seminorm_bound() * t.g1.seminorm_bound() * t.g2.seminorm_bound();
    in.certified = t.certified_regime() && std::isfinite(in.strat.C1) && std::isfinite(in.strat.C2);
    if (!in.certified) {
        std::ostringstream os;
        os << "exponent condition alpha+beta1+beta2 > 2 fails (" << t.exponent_sum() << ")";
        in.why_not_certified = os.str();
    }
    return in;
}

LatticeSums simplex_sums(const NodeEvaluator& nodes, const Simplex2& s, int level, const SummationOptions& opt) {
    const auto [c, sign] = canonical_order(s);
    if (c == s && sign == 1.0) return lattice_sums(nodes, s, level, opt);
    LatticeSums out;
    out.strat = sign * lattice_sums(nodes, c, level, opt).strat;
    out.ito = lattice_sums(nodes, s, level, opt).ito;
    return out;
}

double scheme_error_bound(const SimplexIntegrand& in, const Simplex2& s, Scheme scheme, int level) {
    if (!in.certified) return kInf;
    double b = sewing_error_bound(in.strat, s, level);
    if (scheme == Scheme::Ito)
        b += in.ito_gap_C * std::pow(diam(s), in.strat.gamma2) * std::exp2(level * (2.0 - in.strat.gamma2));
    return b;
}

IntegralResult integrate_simplex(const SimplexIntegrand& in, const Simplex2& s, Scheme scheme, int level,
                                 const IntegrateOptions& opt) {
    if (!in.certified && opt.mode == CertMode::Strict) throw CertificationError(in.why_not_certified);
    const LatticeSums sums = simplex_sums(*in.nodes, s, level, opt.summation);
    IntegralResult r;
    r.scheme = scheme;
    r.level = level;
    r.strat_value = sums.strat;
    r.ito_value = sums.ito;
    r.value = scheme == Scheme::Strat ? sums.strat : sums.ito;
    r.ito_strat_gap = std::abs(sums.strat - sums.ito);
    r.certified = in.certified;
    r.error_bound = scheme_error_bound(in, s, scheme, level);
    return r;
}

IntegralResult integrate_simplex(const FormTriple& t, const Simplex2& s, Scheme scheme, int level,
                                 const IntegrateOptions& opt) {
    return integrate_simplex(simplex_integrand(t), s, scheme, level, opt);
}

Partition dyadic_partition(const Simplex2& s, int n) {
    Partition p;
    for (const auto& [c, cell] : dya_power(s, n).terms) p.simplices.push_back(cell);
    const auto sd = sides(s);
    const double coef[3] = {1.0, -1.0, 1.0};
    for (int i = 0; i < 3; ++i) fill_sides(sd[i], coef[i], n, p.side_fillers);
    return p;
}

void validate_partition(const Simplex2& s, const Partition& part) {
    if (part.simplices.empty()) throw GeometryError("partition: no cells");
    const double area = signed_area(s);
    if (area == 0.0) throw GeometryError("partition: parent simplex is degenerate");
    const double scale = diam(s) * diam(s);
    double abs_sum = 0.0;
    std::map<SegmentKey, double> acc;
    add_boundary(acc, s, 1.0);
    for (const auto& cell : part.simplices) {
        const double a = signed_area(cell);
        if (std::abs(a) <= 1e-14 * scale) throw GeometryError("partition: degenerate cell");
        if (sgn(a) != sgn(area)) throw GeometryError("partition: cell orientation differs from the parent");
        abs_sum += std::abs(a);
        add_boundary(acc, cell, -1.0);
    }
    const auto parent_sides = sides(s);
    for (const auto& q : part.side_fillers) {
        if (std::abs(signed_area(q)) > 1e-14 * scale) throw GeometryError("partition: side filler is not degenerate");
        const bool on_side = std::any_of(parent_sides.begin(), parent_sides.end(), [&](const Simplex1& e) {
            return on_segment_line(e.v[0], e.v[1], q.v[0]) && on_segment_line(e.v[0], e.v[1], q.v[1]) &&
                   on_segment_line(e.v[0], e.v[1], q.v[2]);
        });
        if (!on_side) throw GeometryError("partition: side filler does not lie on a side of the parent");
        add_boundary(acc, q, -1.0);
    }
    for (const auto& [seg, c] : acc)
        if (std::abs(c) > 1e-12) throw GeometryError("partition: boundary chains do not cancel");
    if (std::abs(abs_sum - std::abs(area)) > 1e-12 * std::abs(area))
        throw GeometryError("partition: cell areas do not add up to the parent area (overlap)");
}

PartitionResult integrate_partition(const FormTriple& t, const Simplex2& s, const Partition& part) {
    validate_partition(s, part);
    const Germ2 w = strat_germ(t);
    const SewingParams p = sewing_params(*w.bounds);
    std::vector<double> vals;
    vals.reserve(part.simplices.size());
    double cells = 0.0, fillers = 0.0;
    for (const auto& cell : part.simplices) {
        vals.push_back(w(cell));
        cells += std::pow(diam(cell), p.gamma2);
    }
    for (const auto& q : part.side_fillers) fillers += std::pow(diam(q), p.gamma1);
    PartitionResult r;
    r.value = pairwise_sum(vals);
    if (!p.convergent()) {
        r.bound = kInf;
    } else {
        r.bound = 4.0 * p.C2 / (1.0 - std::exp2(2.0 - p.gamma2)) * cells +
                  p.C1 / (1.0 - std::exp2(1.0 - p.gamma1)) * fillers;
    }
    return r;
}

double signed_area(const Polygon& poly) {
    const auto& v = poly.vertices;
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

void validate_polygon(const Polygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
    for (const auto& p : v)
        if (!is_finite(p)) throw GeometryError("polygon has a non-finite vertex");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            const Point2 a = v[i], b = v[(i + 1) % n], c = v[j], d = v[(j + 1) % n];
            const int o1 = sgn(orient(a, b, c)), o2 = sgn(orient(a, b, d));
            const int o3 = sgn(orient(c, d, a)), o4 = sgn(orient(c, d, b));
            if (o1 * o2 < 0 && o3 * o4 < 0) throw GeometryError("polygon is self-intersecting");
        }
    }
}

IntegralResult integrate_triangles(const FormTriple& t, const std::vector<Simplex2>& tris, Scheme scheme, int level,
                                   const IntegrateOptions& opt) {
    const SimplexIntegrand in = simplex_integrand(t);
    if (!in.certified && opt.mode == CertMode::Strict) throw CertificationError(in.why_not_certified);
    std::vector<double> strat, ito;
    IntegralResult r;
    r.scheme = scheme;
    r.level = level;
    r.certified = in.certified;
    for (const auto& tri : tris) {
        const IntegralResult part = integrate_simplex(in, tri, scheme, level, opt);
        strat.push_back(part.strat_value);
        ito.push_back(part.ito_value);
        r.error_bound += part.error_bound;
    }
    r.strat_value = pairwise_sum(strat);
    r.ito_value = pairwise_sum(ito);
    r.value = scheme == Scheme::Strat ? r.strat_value : r.ito_value;
    r.ito_strat_gap = std::abs(r.strat_value - r.ito_value);
    return r;
}

IntegralResult integrate_polygon(const FormTriple& t, const Polygon& poly, Point2 apex, Scheme scheme, int level,
                                 const IntegrateOptions& opt) {
    validate_polygon(poly);
    std::vector<Simplex2> fan;
    const auto& v = poly.vertices;
    for (std::size_t j = 0; j < v.size(); ++j) fan.push_back(Simplex2{{v[j], v[(j + 1) % v.size()], apex}});
    return integrate_triangles(t, fan, scheme, level, opt);
}

std::vector<Simplex2> ear_clipping(const Polygon& poly) {
    validate_polygon(poly);
    const double area = signed_area(poly);
    if (area == 0.0) throw GeometryError("ear clipping: polygon has zero area");
    const int orientation = sgn(area);
    std::vector<Point2> v = poly.vertices;
    std::vector<Simplex2> out;
    auto inside = [&](Point2 p, Point2 a, Point2 b, Point2 c) {
        const int s1 = sgn(orient(a, b, p)), s2 = sgn(orient(b, c, p)), s3 = sgn(orient(c, a, p));
        return s1 * orientation >= 0 && s2 * orientation >= 0 && s3 * orientation >= 0;
    };
    while (v.size() > 3) {
        const std::size_t n = v.size();
        bool clipped = false;
        for (std::size_t i = 0; i < n && !clipped; ++i) {
            const Point2 a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
            if (sgn(orient(a, b, c)) * orientation <= 0) continue;
            bool empty = true;
            for (std::size_t k = 0; k < n && empty; ++k) {
                if (k == i || k == (i + n - 1) % n || k == (i + 1) % n) continue;
                if (v[k] == a || v[k] == b || v[k] == c) continue;
                if (inside(v[k], a, b, c)) empty = false;
            }
            if (!empty) continue;
            out.push_back(Simplex2{{a, b, c}});
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
        }
        if (!clipped) {
            // Only collinear runs remain; drop a flat vertex.
            for (std::size_t i = 0; i < n && !clipped; ++i) {
                if (orient(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) == 0.0) {
                    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                    clipped = true;
                }
            }
            if (!clipped) throw GeometryError("ear clipping failed");
        }
    }
    out.push_back(Simplex2{{v[0], v[1], v[2]}});
    return out;
}

} // namespace roughint
