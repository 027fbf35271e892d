#include "roughint/germs.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "roughint/young1d.hpp"

namespace roughint {

namespace {

class TripleEvaluator final : public NodeEvaluator {
public:
    explicit TripleEvaluator(FormTriple t) : t_(std::move(t)) {}
    void eval(const double* x1, const double* x2, std::size_t n, double* f, double* g1, double* g2) const override {
        t_.f.eval_many(x1, x2, f, n);
        t_.g1.eval_many(x1, x2, g1, n);
        t_.g2.eval_many(x1, x2, g2, n);
    }

private:
    FormTriple t_;
};

bool lex_less(Point2 a, Point2 b) { return a.x1 < b.x1 || (a.x1 == b.x1 && a.x2 < b.x2); }

void sample(const FormTriple& t, const Simplex2& s, std::array<double, 3>& f, std::array<double, 3>& g1,
            std::array<double, 3>& g2) {
    for (int i = 0; i < 3; ++i) {
        f[i] = t.f(s.v[i]);
        g1[i] = t.g1(s.v[i]);
        g2[i] = t.g2(s.v[i]);
    }
}

double det_from_base(const std::array<double, 3>& g1, const std::array<double, 3>& g2) {
    const double a1 = g1[1] - g1[0], b1 = g1[2] - g1[0];
    const double a2 = g2[1] - g2[0], b2 = g2[2] - g2[0];
    return a1 * b2 - b1 * a2;
}

double product_of_seminorms(const FormTriple& t) {
    return t.f.seminorm_bound() * t.g1.seminorm_bound() * t.g2.seminorm_bound();
}

} // namespace

std::shared_ptr<const NodeEvaluator> node_evaluator(const FormTriple& t) {
    return std::make_shared<TripleEvaluator>(t);
}

std::pair<Simplex2, double> canonical_order(const Simplex2& s) {
    std::array<int, 3> idx{0, 1, 2};
    double sign = 1.0;
    auto swap_if = [&](int i, int j) {
        if (lex_less(s.v[idx[j]], s.v[idx[i]])) {
            std::swap(idx[i], idx[j]);
            sign = -sign;
        }
    };
    swap_if(0, 1);
    swap_if(1, 2);
    swap_if(0, 1);
    // A repeated vertex leaves the order ambiguous; such a simplex carries
    // nothing, so the sign is 0.
    if (s.v[idx[0]] == s.v[idx[1]] || s.v[idx[1]] == s.v[idx[2]]) sign = 0.0;
    return {Simplex2{{s.v[idx[0]], s.v[idx[1]], s.v[idx[2]]}}, sign};
}

double strat_value(const std::array<double, 3>& f, const std::array<double, 3>& g1, const std::array<double, 3>& g2) {
    const double fb = ((f[0] + f[1]) + f[2]) / 3.0;
    return 0.5 * (fb * det_from_base(g1, g2));
}

double ito_value(const std::array<double, 3>& f, const std::array<double, 3>& g1, const std::array<double, 3>& g2) {
    return 0.5 * (f[0] * det_from_base(g1, g2));
}

GermBounds strat_bounds(const FormTriple& t) {
    const double gg = t.g1.seminorm_bound() * t.g2.seminorm_bound();
    return {t.beta1() + t.beta2(), t.f.sup_bound() * gg, t.exponent_sum(), 8.0 * t.f.seminorm_bound() * gg};
}

Germ2 strat_germ(const FormTriple& t) {
    Germ2 w;
    // Evaluated in lexicographic vertex order times the permutation sign, so
    // the six sign relations hold bit for bit.
    w.eval = [t](const Simplex2& s) {
        const auto [c, sign] = canonical_order(s);
        std::array<double, 3> f, g1, g2;
        sample(t, c, f, g1, g2);
        return sign * strat_value(f, g1, g2);
    };
    w.is_alternating = true;
    w.bounds = strat_bounds(t);
    w.kind = GermKind::Strat;
    w.nodes = node_evaluator(t);
    return w;
}

Germ2 ito_germ(const FormTriple& t) {
    Germ2 w;
    w.eval = [t](const Simplex2& s) {
        std::array<double, 3> f, g1, g2;
        sample(t, s, f, g1, g2);
        return ito_value(f, g1, g2);
    };
    w.is_alternating = false;
    w.kind = GermKind::Ito;
    w.nodes = node_evaluator(t);
    return w;
}

Germ2 zust_germ(const FormTriple& t, int boundary_level) {
    if (boundary_level < 0) throw InvalidArgument("zust_germ: boundary_level must be >= 0");
    Germ2 w;
    w.eval = [t, boundary_level](const Simplex2& s) {
        const double loop = trapezoid_integral(t.g1, t.g2, Simplex1{{s.v[0], s.v[1]}}, boundary_level).value +
                            trapezoid_integral(t.g1, t.g2, Simplex1{{s.v[1], s.v[2]}}, boundary_level).value +
                            trapezoid_integral(t.g1, t.g2, Simplex1{{s.v[2], s.v[0]}}, boundary_level).value;
        return t.f(s.v[0]) * loop;
    };
    w.is_alternating = false;
    w.kind = GermKind::Zust;
    return w;
}

namespace {

// det/6 of the increment matrix and the rounding allowance of computing it.
std::pair<double, double> delta_strat_det_and_slack(const FormTriple& t, const Simplex3& s) {
    double m[3][3];
    const ScalarField* rows[3] = {&t.f, &t.g1, &t.g2};
    for (int r = 0; r < 3; ++r) {
        const double base = (*rows[r])(s.v[0]);
        for (int c = 0; c < 3; ++c) m[r][c] = (*rows[r])(s.v[c + 1]) - base;
    }
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    double perm = 0.0;
    for (int c = 0; c < 3; ++c) {
        const int a = (c + 1) % 3, b = (c + 2) % 3;
        perm += std::abs(m[0][c]) * (std::abs(m[1][a] * m[2][b]) + std::abs(m[1][b] * m[2][a]));
    }
    return {det / 6.0, 8.0 * std::numeric_limits<double>::epsilon() * perm / 6.0};
}

} // namespace

double delta_strat_det(const FormTriple& t, const Simplex3& s) { return delta_strat_det_and_slack(t, s).first; }

BoundCheck delta_det_check(const FormTriple& t, const Simplex3& s, double bound) {
    const auto [det, slack] = delta_strat_det_and_slack(t, s);
    return {std::abs(det), bound, slack};
}

TriangleBoundChecks germ_bound_check(const FormTriple& t, const Simplex2& s) {
    std::array<double, 3> f, g1, g2;
    sample(t, s, f, g1, g2);
    const double d = diam(s);
    const double gg = t.g1.seminorm_bound() * t.g2.seminorm_bound();
    const double strat = strat_value(f, g1, g2);
    const double ito = ito_value(f, g1, g2);
    TriangleBoundChecks out;
    out.ito_strat_gap = {std::abs(strat - ito), 2.0 * product_of_seminorms(t) * std::pow(d, t.exponent_sum())};
    out.strat_magnitude = {std::abs(strat), t.f.sup_bound() * gg * std::pow(d, t.beta1() + t.beta2())};
    return out;
}

BoundCheck germ_bound_check(const FormTriple& t, const Simplex3& s) {
    return delta_det_check(t, s, 8.0 * product_of_seminorms(t) * std::pow(diam(s), t.exponent_sum()));
}

} // namespace roughint
