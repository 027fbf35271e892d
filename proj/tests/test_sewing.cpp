#include <doctest.h>

#include <limits>
#include <numbers>
#include <vector>

#include "roughint/integrator.hpp"
#include "roughint/parallel.hpp"
#include "roughint/sewing.hpp"
#include "support/gen.hpp"

using namespace roughint;

namespace {

const Simplex2 kStd{{Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{0.0, 1.0}}};

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// Per-cell rounding scale: |f| times the magnitudes of the two products in
// the determinant.
Germ2 term_scale_germ(const FormTriple& t) {
    Germ2 a;
    a.eval = [t](const Simplex2& s) {
        const double f = (std::abs(t.f(s.v[0])) + std::abs(t.f(s.v[1]))) + std::abs(t.f(s.v[2]));
        auto d = [&](const ScalarField& g, int i) { return g(s.v[i]) - g(s.v[0]); };
        return f * (std::abs(d(t.g1, 1) * d(t.g2, 2)) + std::abs(d(t.g1, 2) * d(t.g2, 1)));
    };
    return a;
}

double delta_side(const Germ2& w, const Simplex2& s, int n) {
    const auto sd = sides(s);
    return side_corrector(w, sd[0], n) - side_corrector(w, sd[1], n) + side_corrector(w, sd[2], n);
}

// Rough triple in the certified regime: 0.8 + 0.75 + 0.75 > 2.
FormTriple rough_certified() {
    return {make_weierstrass(0.8, 2, 10, 11), make_weierstrass(0.75, 2, 10, 12), make_weierstrass(0.75, 2, 10, 13)};
}

FormTriple smooth_triple() {
    return {field_from_spec({FieldKind::Trig, {{"fn", "cos"}, {"freq", {1.0, 2.0}}}}),
            field_from_spec({FieldKind::Polynomial, {{"terms", {{1.0, 2, 0}, {1.0, 0, 1}}}}}),
            field_from_spec({FieldKind::Trig, {{"fn", "sin"}, {"freq", {0.5, 1.0}}}})};
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("lattice summation agrees with the dya recursion") {
    // Dyadic vertices make lattice nodes and midpoints the same doubles;
    // elsewhere they differ by rounding, which rough fields amplify.
    gen::Rng r(81);
    for (int k = 0; k < gen::kCases; ++k) {
        const FormTriple t{gen::any_field(r), gen::any_field(r), gen::any_field(r)};
        const Simplex2 s = gen::dyadic_simplex<2>(r);
        const int n = r.integer(0, 3);
        for (const Germ2& w : {strat_germ(t), ito_germ(t)}) {
            Germ2 plain;
            plain.eval = w.eval;
            const double rec = dyadic_sum_recursive(plain, s, n);
            const double lat = dyadic_sum(w, s, n);
            const double mag = dyadic_sum_recursive(term_scale_germ(t), s, n);
            REQUIRE(std::abs(rec - lat) <= 1e-13 * mag + std::numeric_limits<double>::min());
        }
    }
}

TEST_CASE("dyadic sums of strat are exactly alternating") {
    gen::Rng r(82);
    for (int k = 0; k < gen::kCases; ++k) {
        const FormTriple t{gen::any_field(r), gen::any_field(r), gen::any_field(r)};
        const Simplex2 s = gen::simplex<2>(r);
        const int n = r.integer(0, 3);
        const Germ2 w = strat_germ(t);
        const double v = dyadic_sum(w, s, n);
        REQUIRE(dyadic_sum(w, permute(s, 1, 0, 2), n) == -v);
        REQUIRE(dyadic_sum(w, permute(s, 1, 2, 0), n) == v);
    }
}

} // TEST_SUITE

TEST_CASE("level increments of the corrected sums stay within the interior bound") {
    for (const FormTriple& t : {rough_certified(), smooth_triple()}) {
        const Germ2 w = strat_germ(t);
        const SewingParams p = sewing_params(*w.bounds);
        REQUIRE(p.convergent());
        for (const Simplex2& s : {kStd, Simplex2{{Point2{0.2, 0.1}, Point2{0.25, 0.3}, Point2{0.6, 0.2}}}}) {
            double prev = dyadic_sum(w, s, 0) - delta_side(w, s, 0);
            for (int n = 0; n < 10; ++n) {
                const double next = dyadic_sum(w, s, n + 1) - delta_side(w, s, n + 1);
                const double bound = 4.0 * p.C2 * std::pow(diam(s), p.gamma2) * std::exp2(n * (2.0 - p.gamma2));
                CHECK(std::abs(next - prev) <= bound);
                prev = next;
            }
        }
    }
}

TEST_CASE("the sewn value is additive over dya children within the summed bounds") {
    for (const FormTriple& t : {rough_certified(), smooth_triple()}) {
        const Germ2 w = strat_germ(t);
        const SewingParams p = sewing_params(*w.bounds, 9);
        const Simplex2 s{{Point2{0.1, 0.1}, Point2{0.9, 0.2}, Point2{0.3, 0.7}}};
        const SewingResult whole = sew(w, s, p);
        double sum = 0.0, bounds = whole.error_bound;
        for (const auto& c : dya_children(s)) {
            SewingParams pc = p;
            pc.max_level = p.max_level - 1;
            const SewingResult part = sew(w, c, pc);
            sum += part.value;
            bounds += part.error_bound;
        }
        CHECK(std::abs(sum - whole.value) <= bounds);
        // Both sides use the same cells, so they agree far better than the bound.
        CHECK(std::abs(sum - whole.value) <= 1e-12 * std::max(1.0, std::abs(whole.value)));
    }
}

TEST_CASE("side correctors absorb the germ on a flattened midpoint triangle") {
    // delta S^n + w on [p m q] telescopes to the dyadic sum there, which
    // tends to 0 although w itself does not.
    const FormTriple t = rough_certified();
    const Germ2 w = strat_germ(t);
    const Point2 p{0.1, 0.2}, q{0.8, 0.6};
    const Point2 m = midpoint(p, q);
    const Simplex2 pmq{{p, m, q}};
    CHECK(std::abs(w(pmq)) > 1e-2);
    std::vector<double> gaps;
    for (int n = 2; n <= 16; n += 2) {
        const double dS = side_corrector(w, Simplex1{{m, q}}, n) - side_corrector(w, Simplex1{{p, q}}, n) +
                          side_corrector(w, Simplex1{{p, m}}, n);
        if (n <= 12) CHECK(std::abs(dS + w(pmq) - dyadic_sum(w, pmq, n)) <= 1e-12 * std::abs(w(pmq)));
        gaps.push_back(std::abs(dS + w(pmq)));
    }
    for (std::size_t i = 1; i < gaps.size(); ++i) CHECK(gaps[i] < gaps[i - 1]);
    CHECK(gaps.back() < 1e-6 * std::abs(w(pmq)));
}

TEST_CASE("convergence order of the level trace") {
    // Saturating rough pair: the order matches gamma1 - 1 = 2 beta - 1.
    {
        WeierstrassOptions o;
        o.beta = 0.85;
        o.terms = 14;
        o.direction = 0.3;
        WeierstrassOptions o2 = o;
        o2.phase_shift = -std::numbers::pi / 2;
        const FormTriple t{field_from_spec({FieldKind::Trig, {{"fn", "cos"}, {"freq", {1.0, 1.0}}}}),
                           make_weierstrass(o), make_weierstrass(o2)};
        const Germ2 w = strat_germ(t);
        std::vector<double> x, y;
        double prev = dyadic_sum(w, kStd, 4);
        for (int n = 4; n <= 10; ++n) {
            const double next = dyadic_sum(w, kStd, n + 1);
            x.push_back(n);
            y.push_back(std::log2(std::abs(next - prev)));
            prev = next;
        }
        const GermBounds b = *w.bounds;
        const double predicted = std::min(b.gamma1, b.gamma2) - 1.0;
        const double order = -slope(x, y);
        INFO("rough order " << order << " predicted " << predicted);
        CHECK(std::abs(order - predicted) <= 0.25);
    }
    // Smooth data: the germ is second-order accurate, so the observed
    // order exceeds gamma1 ^ gamma2 - 1 = 1; only the lower side is a claim.
    {
        const FormTriple t = smooth_triple();
        const Germ2 w = strat_germ(t);
        std::vector<double> x, y;
        double prev = dyadic_sum(w, kStd, 4);
        for (int n = 4; n <= 10; ++n) {
            const double next = dyadic_sum(w, kStd, n + 1);
            x.push_back(n);
            y.push_back(std::log2(std::abs(next - prev)));
            prev = next;
        }
        const double order = -slope(x, y);
        INFO("smooth order " << order);
        CHECK(order >= 1.0 - 0.25);
    }
}

TEST_CASE("sewing results do not depend on the thread count") {
    const FormTriple t = rough_certified();
    const Germ2 w = strat_germ(t);
    Germ2 plain;
    plain.eval = w.eval;
    set_max_threads(1);
    const double a = dyadic_sum(w, kStd, 9);
    const double ar = dyadic_sum_recursive(plain, kStd, 6);
    set_max_threads(8);
    const double b = dyadic_sum(w, kStd, 9);
    const double br = dyadic_sum_recursive(plain, kStd, 6);
    set_max_threads(0);
    CHECK(a == b);
    CHECK(ar == br);
}

TEST_CASE("sew refuses non-alternating germs and reports its trace") {
    const FormTriple t = smooth_triple();
    const SewingParams p = sewing_params(strat_bounds(t), 6);
    CHECK_THROWS_AS(sew(ito_germ(t), kStd, p), NonAlternatingGerm);
    const SewingResult r = sew(strat_germ(t), kStd, p);
    CHECK(r.certified);
    REQUIRE(r.level_trace.size() == 7);
    for (std::size_t i = 0; i < r.level_trace.size(); ++i) {
        CHECK(r.level_trace[i].n == static_cast<int>(i));
        if (i > 0) CHECK(r.level_trace[i].error_bound < r.level_trace[i - 1].error_bound);
    }
    CHECK(r.error_bound == sewing_error_bound(p, kStd, 6));
    SewingParams early = p;
    early.target_tol = 10 * r.error_bound;
    CHECK(sew(strat_germ(t), kStd, early).level_used < 6);
}

TEST_CASE("non-convergent exponents are not certified") {
    SewingParams p;
    p.gamma1 = 1.5;
    p.gamma2 = 1.9;
    p.C1 = p.C2 = 1.0;
    CHECK_FALSE(p.convergent());
    CHECK(std::isinf(sewing_error_bound(p, kStd, 5)));
    const FormTriple t{make_weierstrass(0.5, 2, 8, 1), make_weierstrass(0.5, 2, 8, 2), make_weierstrass(0.5, 2, 8, 3)};
    const SewingResult r = sew(strat_germ(t), kStd, sewing_params(strat_bounds(t), 3));
    CHECK_FALSE(r.certified);
    CHECK(std::isinf(r.error_bound));
}

TEST_CASE("side correctors vanish for affine data on dyadic segments") {
    const FormTriple t{ScalarField::constant(2.0), ScalarField::coordinate(0), ScalarField::coordinate(1)};
    const Germ2 w = strat_germ(t);
    CHECK(side_corrector(w, Simplex1{{Point2{0, 0}, Point2{1, 0.5}}}, 8) == 0.0);
    CHECK_THROWS(side_corrector(w, Simplex1{}, -1));
}

TEST_CASE("stability probe: perturbed germs converge to the limit") {
    const FormTriple base = smooth_triple();
    const Germ2 limit = strat_germ(base);
    std::vector<Germ2> seq;
    for (int k = 1; k <= 5; ++k) {
        const ScalarField f = linear_combination(1.0, base.f, std::exp2(-2.0 * k),
                                                 field_from_spec({FieldKind::Trig, {{"fn", "sin"}, {"freq", {3.0, 1.0}}}}));
        seq.push_back(strat_germ({f, base.g1, base.g2}));
    }
    SewingParams p = sewing_params(*limit.bounds, 6);
    for (const auto& w : seq) {
        p.C1 = std::max(p.C1, w.bounds->C1);
        p.C2 = std::max(p.C2, w.bounds->C2);
    }
    const StabilityProbe pr = stability_probe(seq, limit, kStd, p);
    CHECK(pr.certified);
    REQUIRE(pr.gaps.size() == 5);
    for (std::size_t i = 1; i < pr.gaps.size(); ++i) CHECK(pr.gaps[i] < pr.gaps[i - 1]);
    // Germs without bounds cannot be certified.
    Germ2 bare = limit;
    bare.bounds.reset();
    CHECK_FALSE(stability_probe({bare}, limit, kStd, p).certified);
}
