#include "roughint/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "roughint/parallel.hpp"
#include "roughint/summation.hpp"

namespace roughint {

namespace {

using nlohmann::json;

Point2 point_param(const json& j, const char* key, Point2 def) {
    if (!j.contains(key)) return def;
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 2) throw ConfigError(std::string("domain: '") + key + "' must be [x, y]");
    return {a[0].get<double>(), a[1].get<double>()};
}

// Grid index range [lo, hi) of 2^-k squares covering [a, b].
std::pair<long long, long long> index_range(double a, double b, int k) {
    const double s = std::ldexp(1.0, k);
    return {static_cast<long long>(std::floor(a * s)), static_cast<long long>(std::ceil(b * s))};
}

} // namespace

DyadicDomain make_disk(Point2 center, double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("disk: radius must be positive");
    DyadicDomain d;
    d.name = "disk";
    d.inside = [center, radius](Point2 p) { return distance(p, center) < radius; };
    d.contains_square = [center, radius](const Box& b) {
        for (double x : {b.x0, b.x1})
            for (double y : {b.y0, b.y1})
                if (distance({x, y}, center) > radius) return false;
        return true;
    };
    d.bbox = {center.x1 - radius, center.x2 - radius, center.x1 + radius, center.x2 + radius};
    d.boundary_dim_estimate = 1.0;
    d.params = {{"name", "disk"}, {"center", {center.x1, center.x2}}, {"radius", radius}};
    return d;
}

DyadicDomain make_square(Point2 ll, double side) {
    if (!(side > 0.0)) throw InvalidArgument("square: side must be positive");
    DyadicDomain d;
    d.name = "square";
    const Box sq{ll.x1, ll.x2, ll.x1 + side, ll.x2 + side};
    d.inside = [sq](Point2 p) { return p.x1 > sq.x0 && p.x1 < sq.x1 && p.x2 > sq.y0 && p.x2 < sq.y1; };
    d.contains_square = [sq](const Box& b) { return b.x0 >= sq.x0 && b.x1 <= sq.x1 && b.y0 >= sq.y0 && b.y1 <= sq.y1; };
    d.bbox = sq;
    d.boundary_dim_estimate = 1.0;
    d.params = {{"name", "square"}, {"lower_left", {ll.x1, ll.x2}}, {"side", side}};
    return d;
}

DyadicDomain make_weierstrass_hypograph(const HypographOptions& opt) {
    if (!(opt.x1 > opt.x0)) throw InvalidArgument("hypograph: empty x range");
    WeierstrassOptions wo = opt.graph;
    wo.direction = 0.0;
    const ScalarField W = make_weierstrass(wo);
    double lip = 0.0;
    for (int k = 0; k < wo.terms; ++k) lip += std::abs(wo.amplitude) * std::pow(wo.base, k * (1.0 - wo.beta));
    DyadicDomain d;
    d.name = "weierstrass_hypograph";
    const double x0 = opt.x0, x1 = opt.x1, floor = opt.floor, offset = opt.offset;
    d.inside = [=](Point2 p) { return p.x1 > x0 && p.x1 < x1 && p.x2 > floor && p.x2 < offset + W({p.x1, 0.0}); };
    // Lower bound for the graph over [b.x0, b.x1] from 9 samples and the
    // Lipschitz constant of the finite sum.
    d.contains_square = [=](const Box& b) {
        if (b.x0 < x0 || b.x1 > x1 || b.y0 < floor) return false;
        const double step = (b.x1 - b.x0) / 8.0;
        double lo = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 8; ++i) lo = std::min(lo, W({b.x0 + i * step, 0.0}));
        return b.y1 <= offset + lo - lip * step * 0.5;
    };
    d.bbox = {x0, floor, x1, offset + W.sup_bound()};
    d.boundary_dim_estimate = 2.0 - wo.beta;
    d.params = {{"name", "weierstrass_hypograph"},
                {"beta", wo.beta},
                {"base", wo.base},
                {"terms", wo.terms},
                {"seed", wo.seed},
                {"random_phase", wo.random_phase},
                {"phase_shift", wo.phase_shift},
                {"amp", wo.amplitude},
                {"x_range", {x0, x1}},
                {"floor", floor},
                {"offset", offset}};
    return d;
}

DyadicDomain domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("name")) throw ConfigError("domain spec needs a 'name'");
    const std::string name = j.at("name").get<std::string>();
    if (name == "disk") return make_disk(point_param(j, "center", {0.0, 0.0}), j.value("radius", 1.0));
    if (name == "square") return make_square(point_param(j, "lower_left", {0.0, 0.0}), j.value("side", 1.0));
    if (name == "weierstrass_hypograph") {
        HypographOptions o;
        o.graph.beta = j.value("beta", 0.5);
        o.graph.base = j.value("base", 2);
        o.graph.terms = j.value("terms", 14);
        o.graph.seed = j.value("seed", std::uint64_t{0});
        o.graph.random_phase = j.value("random_phase", true);
        o.graph.phase_shift = j.value("phase_shift", 0.0);
        o.graph.amplitude = j.value("amp", 1.0);
        const Point2 xr = point_param(j, "x_range", {0.0, 1.0});
        o.x0 = xr.x1;
        o.x1 = xr.x2;
        o.floor = j.value("floor", -1.0);
        o.offset = j.value("offset", 0.0);
        return make_weierstrass_hypograph(o);
    }
    throw ConfigError("unknown domain '" + name + "'");
}

json to_json(const DyadicDomain& d) { return d.params; }

std::vector<long long> box_counts(const DyadicDomain& dom, int k_min, int k_max) {
    if (k_min < 0 || k_max < k_min) throw InvalidArgument("box_counts: bad level range");
    if (k_max > 12) throw BudgetExceeded("box_counts: k_max above 12");
    const int K = k_max + 2;
    const double coarse = std::ldexp(1.0, -k_min);
    const double X0 = std::floor(dom.bbox.x0 / coarse) * coarse - coarse;
    const double Y0 = std::floor(dom.bbox.y0 / coarse) * coarse - coarse;
    const double X1 = std::ceil(dom.bbox.x1 / coarse) * coarse + coarse;
    const double Y1 = std::ceil(dom.bbox.y1 / coarse) * coarse + coarse;
    const double s = std::ldexp(1.0, -K);
    const std::size_t nx = static_cast<std::size_t>(std::llround((X1 - X0) / s)) + 1;
    const std::size_t ny = static_cast<std::size_t>(std::llround((Y1 - Y0) / s)) + 1;
    if (nx * ny > 200'000'000ull) throw BudgetExceeded("box_counts: sampling grid too large");
    // Inclusive prefix sums of the inside indicator over the nodes.
    std::vector<long long> P((nx + 1) * (ny + 1), 0);
    std::vector<std::vector<unsigned char>> rows(ny, std::vector<unsigned char>(nx));
    parallel_for(ny, [&](std::size_t j) {
        for (std::size_t i = 0; i < nx; ++i)
            rows[j][i] = dom.inside({X0 + static_cast<double>(i) * s, Y0 + static_cast<double>(j) * s}) ? 1 : 0;
    });
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            P[(j + 1) * (nx + 1) + i + 1] = rows[j][i] + P[j * (nx + 1) + i + 1] + P[(j + 1) * (nx + 1) + i] -
                                            P[j * (nx + 1) + i];
    auto count = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
        return P[(j1 + 1) * (nx + 1) + i1 + 1] - P[j0 * (nx + 1) + i1 + 1] - P[(j1 + 1) * (nx + 1) + i0] +
               P[j0 * (nx + 1) + i0];
    };
    std::vector<long long> out;
    for (int k = k_min; k <= k_max; ++k) {
        const std::size_t c = std::size_t{1} << (K - k);
        const long long full = static_cast<long long>((c + 1) * (c + 1));
        long long n = 0;
        for (std::size_t J = 0; J + c < ny; J += c)
            for (std::size_t I = 0; I + c < nx; I += c) {
                const long long in = count(I, J, I + c, J + c);
                if (in > 0 && in < full) ++n;
            }
        out.push_back(n);
    }
    return out;
}

double box_dimension(const DyadicDomain& dom, int k_min, int k_max) {
    if (k_max <= k_min + 2) throw InvalidArgument("box_dimension: need k_max > k_min + 2");
    const auto counts = box_counts(dom, k_min, k_max);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int k = k_min; k <= k_max; ++k) {
        const long long c = counts[static_cast<std::size_t>(k - k_min)];
        if (c <= 0) throw InvalidArgument("box_dimension: degenerate fit (no boundary squares)");
        const double x = k, y = std::log2(static_cast<double>(c));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    const double den = m * sxx - sx * sx;
    if (den == 0.0) throw InvalidArgument("box_dimension: degenerate fit");
    return (m * sxy - sx * sy) / den;
}

DomainIntegralResult integrate_domain(const FormTriple& t, const DyadicDomain& dom, int k_min, int k_max,
                                      Scheme scheme, int level, const IntegrateOptions& opt) {
    if (k_min < 0 || k_max < k_min) throw InvalidArgument("integrate_domain: bad level range");
    if (k_max > 12) throw BudgetExceeded("integrate_domain: k_max above 12");
    const SimplexIntegrand in = simplex_integrand(t);
    DomainIntegralResult out;
    out.dimension_condition = dom.boundary_dim_estimate < t.beta1() + t.beta2();
    const bool certified = in.certified && out.dimension_condition;
    if (!certified && opt.mode == CertMode::Strict)
        throw CertificationError(!in.certified ? in.why_not_certified
                                               : "box dimension of the boundary is not below beta1 + beta2");
    for (int k = k_min; k <= k_max; ++k) {
        const double h = std::ldexp(1.0, -k);
        const auto [i0, i1] = index_range(dom.bbox.x0, dom.bbox.x1, k);
        const auto [j0, j1] = index_range(dom.bbox.y0, dom.bbox.y1, k);
        const std::size_t nrows = static_cast<std::size_t>(j1 - j0);
        std::vector<double> row_strat(nrows, 0.0), row_ito(nrows, 0.0);
        std::vector<long long> row_count(nrows, 0);
        parallel_for(nrows, [&](std::size_t r) {
            const double y = static_cast<double>(j0 + static_cast<long long>(r)) * h;
            double s = 0.0, it = 0.0;
            long long cnt = 0;
            for (long long i = i0; i < i1; ++i) {
                const double x = static_cast<double>(i) * h;
                const Box sq{x, y, x + h, y + h};
                if (!dom.contains_square(sq)) continue;
                const Point2 A{x, y}, B{x + h, y}, C{x + h, y + h}, D{x, y + h};
                const LatticeSums l1 = simplex_sums(*in.nodes, Simplex2{{A, B, C}}, level, opt.summation);
                const LatticeSums l2 = simplex_sums(*in.nodes, Simplex2{{A, C, D}}, level, opt.summation);
                s += l1.strat + l2.strat;
                it += l1.ito + l2.ito;
                ++cnt;
            }
            row_strat[r] = s;
            row_ito[r] = it;
            row_count[r] = cnt;
        });
        DomainLevel lv;
        lv.k = k;
        for (long long c : row_count) lv.squares += c;
        lv.strat_value = pairwise_sum(row_strat);
        lv.ito_value = pairwise_sum(row_ito);
        lv.value = scheme == Scheme::Strat ? lv.strat_value : lv.ito_value;
        lv.difference = out.trace.empty() ? 0.0 : std::abs(lv.value - out.trace.back().value);
        const Simplex2 ref{{Point2{0.0, 0.0}, Point2{h, 0.0}, Point2{h, h}}};
        lv.quadrature_bound = in.certified ? 2.0 * static_cast<double>(lv.squares) * scheme_error_bound(in, ref, scheme, level)
                                           : std::numeric_limits<double>::infinity();
        out.trace.push_back(lv);
    }
    const DomainLevel& last = out.trace.back();
    const double r = std::exp2(dom.boundary_dim_estimate - t.beta1() - t.beta2());
    out.tail_estimate = (out.dimension_condition && r < 1.0) ? last.difference * r / (1.0 - r)
                                                             : std::numeric_limits<double>::infinity();
    IntegralResult& res = out.result;
    res.scheme = scheme;
    res.level = level;
    res.value = last.value;
    res.strat_value = last.strat_value;
    res.ito_value = last.ito_value;
    res.ito_strat_gap = std::abs(last.strat_value - last.ito_value);
    res.certified = certified;
    res.error_bound = certified ? last.quadrature_bound + out.tail_estimate : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace roughint
