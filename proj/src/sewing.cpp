#include "roughint/sewing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "roughint/parallel.hpp"
#include "roughint/summation.hpp"

namespace roughint {

namespace {

void check_level(int n) {
    if (n < 0) throw InvalidArgument("dyadic level must be >= 0");
    if (n > kMaxDyadicLevel) throw BudgetExceeded("dyadic level " + std::to_string(n) + " exceeds the budget");
}

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw NonFiniteValue(std::string(what) + ": non-finite germ sum");
    return v;
}

struct RowBuffer {
    std::vector<double> x1, x2, f, g1, g2;
    explicit RowBuffer(std::size_t n) : x1(n), x2(n), f(n), g1(n), g2(n) {}
    kernels::RowData data() const { return {f.data(), g1.data(), g2.data()}; }
};

double recurse(const Germ2& w, const Simplex2& s, int n) {
    if (n == 0) return w(s);
    const auto c = dya_children(s);
    return (recurse(w, c[0], n - 1) + recurse(w, c[1], n - 1)) + (recurse(w, c[2], n - 1) + recurse(w, c[3], n - 1));
}

double side_recurse(const Germ2& w, const Simplex1& seg, int k) {
    if (k == 0) return 0.0;
    const Point2 q = midpoint(seg.v[0], seg.v[1]);
    const double here = w(Simplex2{{seg.v[0], q, seg.v[1]}});
    return here + (side_recurse(w, Simplex1{{seg.v[0], q}}, k - 1) + side_recurse(w, Simplex1{{q, seg.v[1]}}, k - 1));
}

} // namespace

LatticeSums lattice_sums(const NodeEvaluator& nodes, const Simplex2& s, int n, const SummationOptions& opt) {
    check_level(n);
    const std::size_t N = std::size_t{1} << n;
    const double h = std::ldexp(1.0, -n);
    const Point2 p0 = s.v[0], e1 = s.v[1] - s.v[0], e2 = s.v[2] - s.v[0];
    const std::size_t band = static_cast<std::size_t>(std::max(1, opt.band_rows));
    const std::size_t nbands = (N + band - 1) / band;
    const kernels::StripFn kernel = kernels::strip_kernel(opt.isa ? *opt.isa : kernels::active_isa());

    auto fill_row = [&](std::size_t b, RowBuffer& buf) {
        const std::size_t count = N - b + 1;
        const double bh = static_cast<double>(b) * h;
        for (std::size_t a = 0; a < count; ++a) {
            const double ah = static_cast<double>(a) * h;
            buf.x1[a] = p0.x1 + ah * e1.x1 + bh * e2.x1;
            buf.x2[a] = p0.x2 + ah * e1.x2 + bh * e2.x2;
        }
        nodes.eval(buf.x1.data(), buf.x2.data(), count, buf.f.data(), buf.g1.data(), buf.g2.data());
    };

    std::vector<double> strat3(nbands), ito(nbands);
    parallel_for(nbands, [&](std::size_t j) {
        const std::size_t b0 = j * band, b1 = std::min(N, b0 + band);
        RowBuffer lower(N - b0 + 1), upper(N - b0 + 1);
        fill_row(b0, lower);
        double s3 = 0.0, it = 0.0;
        NeumaierSum cs, ci;
        for (std::size_t b = b0; b < b1; ++b) {
            fill_row(b + 1, upper);
            const kernels::StripSums r = kernel(lower.data(), upper.data(), N - b);
            if (opt.compensated) {
                cs.add(r.strat3);
                ci.add(r.ito);
            } else {
                s3 += r.strat3;
                it += r.ito;
            }
            std::swap(lower, upper);
        }
        strat3[j] = opt.compensated ? cs.value() : s3;
        ito[j] = opt.compensated ? ci.value() : it;
    });
    LatticeSums out;
    out.strat = checked(pairwise_sum(strat3) / 6.0, "lattice_sums");
    out.ito = checked(0.5 * pairwise_sum(ito), "lattice_sums");
    return out;
}

double dyadic_sum_recursive(const Germ2& w, const Simplex2& s, int n) {
    check_level(n);
    if (n < 4 || max_threads() <= 1) return checked(recurse(w, s, n), "dyadic_sum");
    // Same tree as the serial recursion, with the 16 grandchildren in parallel.
    std::array<Simplex2, 16> grand;
    const auto top = dya_children(s);
    for (int i = 0; i < 4; ++i) {
        const auto c = dya_children(top[i]);
        for (int k = 0; k < 4; ++k) grand[4 * i + k] = c[k];
    }
    std::array<double, 16> v{};
    parallel_for(16, [&](std::size_t i) { v[i] = recurse(w, grand[i], n - 2); });
    double mid[4];
    for (int i = 0; i < 4; ++i) mid[i] = (v[4 * i] + v[4 * i + 1]) + (v[4 * i + 2] + v[4 * i + 3]);
    return checked((mid[0] + mid[1]) + (mid[2] + mid[3]), "dyadic_sum");
}

double dyadic_sum(const Germ2& w, const Simplex2& s, int n, const SummationOptions& opt) {
    check_level(n);
    if (n == 0) return checked(w(s), "dyadic_sum");
    if (w.nodes && w.kind == GermKind::Strat) {
        // The canonical vertex order makes the sum exactly alternating.
        const auto [c, sign] = canonical_order(s);
        return sign * lattice_sums(*w.nodes, c, n, opt).strat;
    }
    if (w.nodes && w.kind == GermKind::Ito) return lattice_sums(*w.nodes, s, n, opt).ito;
    return dyadic_sum_recursive(w, s, n);
}

double side_corrector(const Germ2& w, const Simplex1& seg, int n) {
    if (n < 0) throw InvalidArgument("side_corrector: level must be >= 0");
    if (n > 24) throw BudgetExceeded("side_corrector: level exceeds the budget");
    return checked(side_recurse(w, seg, n), "side_corrector");
}

SewingParams sewing_params(const GermBounds& b, int max_level, double target_tol) {
    SewingParams p;
    p.gamma1 = b.gamma1;
    p.C1 = b.C1;
    p.gamma2 = b.gamma2;
    p.C2 = b.C2;
    p.max_level = max_level;
    p.target_tol = target_tol;
    return p;
}

std::array<Simplex1, 3> sides(const Simplex2& s) {
    return {Simplex1{{s.v[1], s.v[2]}}, Simplex1{{s.v[0], s.v[2]}}, Simplex1{{s.v[0], s.v[1]}}};
}

double side_tail_bound(const SewingParams& p, const Simplex1& seg, int n) {
    if (!(p.gamma1 > 1.0)) return std::numeric_limits<double>::infinity();
    return p.C1 * std::pow(diam(seg), p.gamma1) * std::exp2(n * (1.0 - p.gamma1)) / (1.0 - std::exp2(1.0 - p.gamma1));
}

double interior_tail_bound(const SewingParams& p, const Simplex2& s, int n) {
    if (!(p.gamma2 > 2.0)) return std::numeric_limits<double>::infinity();
    return 4.0 * p.C2 * std::pow(diam(s), p.gamma2) * std::exp2(n * (2.0 - p.gamma2)) /
           (1.0 - std::exp2(2.0 - p.gamma2));
}

double sewing_error_bound(const SewingParams& p, const Simplex2& s, int n) {
    if (!p.convergent()) return std::numeric_limits<double>::infinity();
    double b = interior_tail_bound(p, s, n);
    for (const auto& seg : sides(s)) b += side_tail_bound(p, seg, n);
    return b;
}

SewingResult sew(const Germ2& w, const Simplex2& s, const SewingParams& params, const SummationOptions& opt) {
    if (!w.is_alternating) throw NonAlternatingGerm("sew: the germ is not alternating");
    if (params.max_level < 0) throw InvalidArgument("sew: max_level must be >= 0");
    SewingResult r;
    r.certified = params.convergent() && std::isfinite(params.C1) && std::isfinite(params.C2);
    const auto segs = sides(s);
    for (int n = 0; n <= params.max_level; ++n) {
        SewingLevel lv;
        lv.n = n;
        lv.omega = dyadic_sum(w, s, n, opt);
        for (int i = 0; i < 3; ++i) lv.side[i] = side_corrector(w, segs[i], n);
        lv.error_bound = r.certified ? sewing_error_bound(params, s, n) : std::numeric_limits<double>::infinity();
        r.level_trace.push_back(lv);
        if (r.certified && lv.error_bound <= params.target_tol) break;
    }
    const SewingLevel& last = r.level_trace.back();
    r.value = last.omega;
    r.side_corrector = last.side;
    r.level_used = last.n;
    r.error_bound = last.error_bound;
    return r;
}

StabilityProbe stability_probe(const std::vector<Germ2>& seq, const Germ2& limit, const Simplex2& s,
                               const SewingParams& params, const SummationOptions& opt) {
    StabilityProbe out;
    out.certified = params.convergent();
    auto within = [&](const Germ2& w) {
        if (!w.bounds) return false;
        const GermBounds& b = *w.bounds;
        return b.C1 <= params.C1 && b.C2 <= params.C2 && b.gamma1 >= params.gamma1 && b.gamma2 >= params.gamma2;
    };
    out.certified = out.certified && within(limit);
    const double V = sew(limit, s, params, opt).value;
    for (const auto& w : seq) {
        out.certified = out.certified && within(w);
        out.gaps.push_back(std::abs(sew(w, s, params, opt).value - V));
    }
    return out;
}

} // namespace roughint
