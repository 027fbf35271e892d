#include <doctest.h>

#include <numbers>
#include <vector>

#include "roughint/fields.hpp"
#include "support/gen.hpp"

using namespace roughint;
using nlohmann::json;

namespace {

const Box kUnit{0.0, 0.0, 1.0, 1.0};

std::vector<FieldSpec> builtin_specs() {
    const json w = {{"kind", "weierstrass"}, {"params", {{"beta", 0.6}, {"terms", 12}, {"seed", 5}}}};
    return {
        {FieldKind::Affine, {{"c", 0.5}, {"a", {1.5, -2.0}}}},
        {FieldKind::Polynomial, {{"terms", {{1.0, 2, 0}, {-0.5, 1, 1}, {0.25, 0, 3}}}}},
        {FieldKind::Trig, {{"fn", "sin"}, {"freq", {3.0, -1.0}}, {"phase", 0.3}, {"amp", 2.0}}},
        {FieldKind::Trig, {{"fn", "cos"}, {"freq", {0.0, 5.0}}}},
        {FieldKind::Weierstrass, {{"beta", 0.3}, {"terms", 14}, {"seed", 1}}},
        {FieldKind::Weierstrass, {{"beta", 0.55}, {"base", 3}, {"terms", 9}, {"seed", 2}}},
        {FieldKind::Weierstrass, {{"beta", 0.85}, {"terms", 14}, {"seed", 0}, {"direction", 0.3}}},
        {FieldKind::Weierstrass,
         {{"beta", 0.85}, {"terms", 14}, {"seed", 0}, {"direction", 0.3}, {"phase_shift", -std::numbers::pi / 2}}},
        {FieldKind::Weierstrass, {{"beta", 0.95}, {"terms", 16}, {"seed", 3}, {"random_phase", false}, {"amp", 0.5}}},
        {FieldKind::Composed, {{"outer", "sin"}, {"inner", w}}},
        {FieldKind::Composed, {{"outer", "exp"}, {"scale", 0.5}, {"inner", w}}},
        {FieldKind::Composed, {{"outer", "square"}, {"inner", w}}},
    };
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("declared seminorm dominates the empirical estimate for every built-in field") {
    std::uint64_t seed = 41;
    for (const auto& spec : builtin_specs()) {
        const ScalarField f = field_from_spec(spec);
        INFO(to_json(spec).dump());
        const double est = estimate_seminorm(f, kUnit, 100000, std::exp2(-14), seed++);
        CHECK(est > 0.0);
        CHECK(est <= f.seminorm_bound());
    }
}

TEST_CASE("declared seminorm dominates on random pairs for random fields") {
    gen::Rng r(42);
    for (int k = 0; k < gen::kCases; ++k) {
        const ScalarField f = gen::any_field(r);
        const Point2 u = gen::point(r);
        const double d = std::exp2(-14.0 * r.uniform(0, 1));
        const double th = r.uniform(0, 2 * std::numbers::pi);
        const Point2 v = u + Point2{d * std::cos(th), d * std::sin(th)};
        const double lhs = std::abs(f(v) - f(u));
        REQUIRE(lhs <= f.seminorm_bound() * std::pow(distance(u, v), f.hoelder_exponent()) * (1 + 1e-12));
        REQUIRE(std::abs(f(u)) <= f.sup_bound());
    }
}

TEST_CASE("evaluation is pure and eval_many matches eval bitwise") {
    gen::Rng r(43);
    for (int k = 0; k < gen::kCases / 10; ++k) {
        const ScalarField f = gen::any_field(r);
        std::vector<double> x1(17), x2(17), out(17);
        for (std::size_t i = 0; i < x1.size(); ++i) {
            const Point2 p = gen::point(r);
            x1[i] = p.x1;
            x2[i] = p.x2;
        }
        f.eval_many(x1.data(), x2.data(), out.data(), out.size());
        for (std::size_t i = 0; i < x1.size(); ++i) {
            const double a = f({x1[i], x2[i]});
            REQUIRE(a == f({x1[i], x2[i]}));
            REQUIRE(a == out[i]);
        }
    }
}

} // TEST_SUITE

TEST_CASE("field specs round-trip through JSON") {
    for (const auto& spec : builtin_specs()) {
        const json j = to_json(spec);
        CHECK(field_spec_from_json(j) == spec);
        CHECK(field_spec_from_json(json::parse(j.dump())) == spec);
        const ScalarField f = field_from_spec(spec);
        REQUIRE(f.spec().has_value());
        CHECK(*f.spec() == spec);
        const ScalarField g = field_from_spec(field_spec_from_json(j));
        CHECK(f({0.3, 0.7}) == g({0.3, 0.7}));
    }
}

TEST_CASE("malformed field specs are rejected") {
    CHECK_THROWS_AS(field_spec_from_json(json{{"params", json::object()}}), ConfigError);
    CHECK_THROWS_AS(field_spec_from_json(json{{"kind", "spline"}}), ConfigError);
    CHECK_THROWS_AS(field_from_spec({FieldKind::Weierstrass, {{"terms", 3}}}), ConfigError);
    CHECK_THROWS_AS(field_from_spec({FieldKind::Trig, {{"fn", "tan"}, {"freq", {1, 1}}}}), ConfigError);
    CHECK_THROWS_AS(field_from_spec({FieldKind::Polynomial, {{"terms", {{1.0, -1, 0}}}}}), ConfigError);
    CHECK_THROWS_AS(field_from_spec({FieldKind::Composed, {{"outer", "sin"}}}), ConfigError);
}

TEST_CASE("weierstrass metadata") {
    const ScalarField w = make_weierstrass(0.7, 2, 10, 4);
    CHECK(w.hoelder_exponent() == 0.7);
    CHECK(w.seminorm_bound() > 0.0);
    CHECK(w.sup_bound() <= 1.0 / (1.0 - std::exp2(-0.7)) + 1e-12);
    // Same seed, same field; different seed, different field.
    CHECK(make_weierstrass(0.7, 2, 10, 4)({0.1, 0.2}) == w({0.1, 0.2}));
    CHECK(make_weierstrass(0.7, 2, 10, 5)({0.1, 0.2}) != w({0.1, 0.2}));
    CHECK_THROWS(make_weierstrass(1.5, 2, 10, 0));
    CHECK_THROWS(make_weierstrass(0.5, 1, 10, 0));
}

TEST_CASE("a conjugate pair shares directions and is a quarter turn apart") {
    WeierstrassOptions o;
    o.beta = 0.8;
    o.terms = 1;
    o.direction = 0.0;
    o.random_phase = false;
    WeierstrassOptions o2 = o;
    o2.phase_shift = -std::numbers::pi / 2;
    const ScalarField a = make_weierstrass(o), b = make_weierstrass(o2);
    for (double x : {0.0, 0.1, 0.37, 0.9}) {
        const double u = a({x, 0.4}), v = b({x, 0.4});
        CHECK(u * u + v * v == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(a({x, 0.0}) == a({x, 0.9}));
    }
}

TEST_CASE("linear combination and compose carry bounds") {
    const ScalarField x = ScalarField::coordinate(0), y = ScalarField::coordinate(1);
    const ScalarField s = linear_combination(2.0, x, -1.0, y);
    CHECK(s({0.5, 0.25}) == 0.75);
    CHECK(s.seminorm_bound() == 3.0);
    const ScalarField w = make_weierstrass(0.5, 2, 8, 1);
    const ScalarField m = linear_combination(1.0, x, 1.0, w);
    CHECK(m.hoelder_exponent() == 0.5);
    const ScalarField c = compose([](double u) { return std::sin(u); }, w, 1.0, 1.0, "sin");
    CHECK(c.hoelder_exponent() == 0.5);
    CHECK(c.seminorm_bound() == w.seminorm_bound());
    CHECK(c({0.2, 0.3}) == std::sin(w({0.2, 0.3})));
    CHECK(ScalarField::constant(3.0).seminorm_bound() == 0.0);
}

TEST_CASE("seminorm bound of a finite sum is close to the single-scale sup") {
    const double b = weierstrass_seminorm_bound(0.5, 2, 12, 2.0);
    double direct = 0.0;
    for (int i = -200; i <= 40; ++i) {
        const double r = std::exp2(i / 16.0);
        if (r > 2.0) break;
        double s = 0.0;
        for (int k = 0; k < 12; ++k) s += std::exp2(-0.5 * k) * std::min(2.0, std::exp2(k) * r);
        direct = std::max(direct, s / std::sqrt(r));
    }
    CHECK(b >= direct);
    CHECK(b <= 1.5 * direct);
}
