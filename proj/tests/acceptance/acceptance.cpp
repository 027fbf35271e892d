#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "oracles/quadrature.hpp"
#include "roughint/domains.hpp"
#include "roughint/experiment.hpp"
#include "roughint/integrator.hpp"
#include "roughint/irregular.hpp"
#include "roughint/parallel.hpp"
#include "roughint/young1d.hpp"

using namespace roughint;
using nlohmann::json;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const Simplex2 kStd{{Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{0.0, 1.0}}};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

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

ScalarField poly(std::vector<std::array<double, 3>> terms) {
    json t = json::array();
    for (auto& a : terms) t.push_back({a[0], static_cast<int>(a[1]), static_cast<int>(a[2])});
    return field_from_spec({FieldKind::Polynomial, {{"terms", t}}});
}

ScalarField trig(const char* fn, double k1, double k2) {
    return field_from_spec({FieldKind::Trig, {{"fn", fn}, {"freq", {k1, k2}}, {"phase", 0.0}, {"amp", 1.0}}});
}

// Conjugate pair sharing one direction: the second member is the first
// with every phase shifted by -pi/2.
std::pair<ScalarField, ScalarField> conjugate_pair(double beta, double angle, std::uint64_t seed) {
    WeierstrassOptions o;
    o.beta = beta;
    o.terms = 14;
    o.seed = seed;
    o.direction = angle;
    WeierstrassOptions o2 = o;
    o2.phase_shift = -std::numbers::pi / 2;
    return {make_weierstrass(o), make_weierstrass(o2)};
}

// Independent pair with random direction and phase per term.
std::pair<ScalarField, ScalarField> random_pair(double beta, std::uint64_t seed1, std::uint64_t seed2) {
    return {make_weierstrass(beta, 2, 14, seed1), make_weierstrass(beta, 2, 14, seed2)};
}

Outcome c1_affine_exactness() {
    const FormTriple t{ScalarField::constant(1.0), ScalarField::coordinate(0), ScalarField::coordinate(1)};
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n = 0; n <= 12; ++n) {
        const LatticeSums s = simplex_sums(*node_evaluator(t), kStd, n);
        worst = std::max({worst, std::abs(s.strat - 0.5), std::abs(s.ito - 0.5)});
    }
    const double secs = seconds_since(t0);
    return {worst <= 4 * kEps && secs < 1.0, "max |v - 1/2| = " + fmt("%.3g", worst) + ", time " + fmt("%.3f s", secs)};
}

Outcome c2_smooth_oracle() {
    set_max_threads(1);
    const FormTriple t{poly({{1, 1, 1}}), poly({{1, 2, 0}, {1, 0, 1}}), trig("sin", 0, 1)};
    const auto t0 = std::chrono::steady_clock::now();
    const IntegralResult r = integrate_simplex(t, kStd, Scheme::Strat, 10);
    const double secs = seconds_since(t0);
    set_max_threads(0);
    const double exact = oracle::triangle_integral(
        [](double x, double y) { return x * y * 2.0 * x * std::cos(y); }, kStd);
    const double err = std::abs(r.value - exact);
    const bool ok = err <= r.error_bound && err <= 1e-4 * std::abs(exact) && secs < 10.0;
    return {ok, "err " + fmt("%.3g", err) + ", bound " + fmt("%.3g", r.error_bound) + ", rel " +
                    fmt("%.3g", err / std::abs(exact)) + ", time " + fmt("%.2f s", secs)};
}

struct RoughTrace {
    std::vector<double> strat, ito;
    double scale = 0.0;
};

const RoughTrace& rate_trace() {
    static const RoughTrace tr = [] {
        const auto [g1, g2] = conjugate_pair(0.85, 0.3, 0);
        const FormTriple t{trig("cos", 1, 1), g1, g2};
        const auto nodes = node_evaluator(t);
        RoughTrace r;
        for (int n = 0; n <= 12; ++n) {
            const LatticeSums s = simplex_sums(*nodes, kStd, n);
            r.strat.push_back(s.strat);
            r.ito.push_back(s.ito);
        }
        r.scale = t.f.sup_bound() * g1.seminorm_bound() * g2.seminorm_bound() * std::pow(diam(kStd), 1.7);
        return r;
    }();
    return tr;
}

Outcome c3_rate() {
    const RoughTrace& tr = rate_trace();
    std::vector<double> x, y;
    for (int n = 5; n <= 11; ++n) {
        x.push_back(n);
        y.push_back(std::log2(std::abs(tr.strat[n + 1] - tr.strat[n])));
    }
    const double s = slope(x, y);
    return {s >= -1.0 && s <= -0.4, "slope " + fmt("%.3f", s) + " (window [-1.0, -0.4])"};
}

Outcome c4_ito_strat() {
    const RoughTrace& tr = rate_trace();
    bool decreasing = true;
    for (int n = 5; n <= 11; ++n)
        decreasing = decreasing && std::abs(tr.ito[n] - tr.strat[n]) < std::abs(tr.ito[n - 1] - tr.strat[n - 1]);
    const double gap11 = std::abs(tr.ito[11] - tr.strat[11]);
    std::vector<double> x, y;
    for (int n = 4; n <= 11; ++n) {
        x.push_back(n);
        y.push_back(std::log2(std::abs(tr.ito[n] - tr.strat[n])));
    }
    return {decreasing && gap11 < 1e-3 * tr.scale,
            std::string("gap decreasing: ") + (decreasing ? "yes" : "no") + ", gap(11) " + fmt("%.3g", gap11) +
                " vs " + fmt("%.3g", 1e-3 * tr.scale) + ", observed order " + fmt("%.3f", -slope(x, y)) +
                " (predicted 0.7)"};
}

Outcome c5_nonatomic() {
    const auto [g1, g2] = random_pair(0.85, 0, 1);
    const FormTriple t{trig("cos", 1, 1), g1, g2};
    const Simplex2 flat{{Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{0.5, 0.0}}};
    const double s0 = std::abs(strat_germ(t)(flat));
    const double s11 = std::abs(integrate_simplex(t, flat, Scheme::Strat, 11).value);
    return {s0 > 1e-3 && s11 < 1e-4, "|strat0| " + fmt("%.3g", s0) + ", |strat11| " + fmt("%.3g", s11)};
}

Outcome c6_stokes() {
    const FormTriple t{ScalarField::constant(1.0), poly({{1, 2, 0}, {-1, 0, 2}}), poly({{2, 1, 1}})};
    const double surface = integrate_simplex(t, kStd, Scheme::Strat, 10).value;
    const double line = boundary_young_integral(t.g1, t.g2, kStd, 14);
    const double gap = std::abs(surface - line);
    return {gap <= 1e-5, "gap " + fmt("%.3g", gap)};
}

Outcome c7_polygon() {
    const FormTriple t{ScalarField::constant(1.0), poly({{1, 2, 0}, {1, 0, 1}}), trig("sin", 0, 1)};
    const Polygon sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    const double a = integrate_polygon(t, sq, {0, 0}, Scheme::Strat, 10).value;
    const double b = integrate_polygon(t, sq, {5, 5}, Scheme::Strat, 10).value;
    const double exact = oracle::triangle_integral([](double x, double y) { return 2 * x * std::cos(y); },
                                                   Simplex2{{Point2{0, 0}, Point2{1, 0}, Point2{1, 1}}}) +
                         oracle::triangle_integral([](double x, double y) { return 2 * x * std::cos(y); },
                                                   Simplex2{{Point2{0, 0}, Point2{1, 1}, Point2{0, 1}}});
    const double d = std::abs(a - b), e = std::abs(a - exact);
    return {d <= 1e-8 && e <= 1e-6, "apex gap " + fmt("%.3g", d) + ", oracle err " + fmt("%.3g", e)};
}

Outcome c8_domain() {
    const ScalarField f = ScalarField::from_function(
        [](Point2 p) { return std::exp(-4.0 * (p.x1 * p.x1 + p.x2 * p.x2)); }, 1.0, 8.0 / std::sqrt(2.0 * std::exp(1.0)),
        1.0, kWorkingBox, "exp(-4|x|^2)");
    const FormTriple t{f, poly({{1, 1, 0}, {0.25, 0, 2}}), linear_combination(1.0, ScalarField::coordinate(1), 0.25,
                                                                           trig("sin", 1, 0))};
    const DomainIntegralResult r = integrate_domain(t, make_disk({0, 0}, 1.0), 4, 9, Scheme::Strat, 3);
    std::vector<double> x, y;
    for (const auto& lv : r.trace)
        if (lv.k >= 5) {
            x.push_back(lv.k - 1);
            y.push_back(std::log2(lv.difference));
        }
    const double s = slope(x, y);
    const double exact = oracle::disk_integral(
        [](double a, double b) {
            return std::exp(-4.0 * (a * a + b * b)) * (1.0 - 0.125 * b * std::cos(a));
        },
        {0, 0}, 1.0);
    const double err = std::abs(r.result.value - exact);
    return {s >= -1.3 && s <= -0.7 && err <= 1e-3,
            "slope " + fmt("%.3f", s) + " (window [-1.3, -0.7]), |P9 - oracle| " + fmt("%.3g", err)};
}

Outcome c9_chain_rule() {
    const ChainRuleResult r = chain_rule_residual(composed_integrand("one"), smooth_map("square1"),
                                                  ScalarField::coordinate(0), ScalarField::coordinate(1), kStd, 10);
    const double e1 = std::abs(r.lhs - 1.0 / 3), e2 = std::abs(r.rhs - 1.0 / 3);
    return {e1 <= 1e-6 && e2 <= 1e-6, "lhs err " + fmt("%.3g", e1) + ", rhs err " + fmt("%.3g", e2)};
}

Outcome c10_degree() {
    const DegreeCheckResult a = degree_identity_check(composed_integrand("one"), ScalarField::coordinate(0),
                                                      ScalarField::coordinate(1), kStd, 8, 8);
    const Simplex2 s{{Point2{-0.5, -0.4}, Point2{0.6, -0.3}, Point2{0.1, 0.7}}};
    const DegreeCheckResult b = degree_identity_check(composed_integrand("one"), poly({{1, 2, 0}, {-1, 0, 2}}),
                                                      poly({{2, 1, 1}}), s, 8, 8);
    const bool ok = a.gap < 1e-3 && b.gap < 1e-3 && a.certified && b.certified;
    return {ok, "identity gap " + fmt("%.3g", a.gap) + ", complex square gap " + fmt("%.3g", b.gap) +
                    " (lhs " + fmt("%.6f", b.lhs) + ", excluded mass " + fmt("%.3g", b.excluded_mass) + ")"};
}

Outcome c11_strat1d() {
    const std::vector<ScalarField> gs{ScalarField::coordinate(0),
                                      poly({{1, 2, 0}, {-0.5, 1, 1}}),
                                      trig("sin", 2, 1),
                                      make_weierstrass(0.4, 2, 14, 3),
                                      field_from_spec({FieldKind::Composed,
                                                       {{"outer", "exp"},
                                                        {"inner", {{"kind", "weierstrass"},
                                                                   {"params", {{"beta", 0.6}, {"terms", 12}}}}}}})};
    const Simplex1 seg{{Point2{-0.3, 0.2}, Point2{0.9, 0.7}}};
    const LineIntegrand F = [](Point2, double y) { return y; };
    double worst = 0.0;
    for (const auto& g : gs) {
        const double a = g(seg.v[0]), b = g(seg.v[1]);
        const double exact = 0.5 * (b * b - a * a);
        const double scale = std::max(1.0, 0.5 * (a * a + b * b));
        for (int n = 0; n <= 20; ++n)
            worst = std::max(worst, std::abs(strat1d_sum(F, g, seg, n).value - exact) / (kEps * scale));
    }
    const ScalarField w = make_weierstrass(0.4, 2, 14, 3);
    double min_drift = std::numeric_limits<double>::infinity();
    for (int n = 8; n <= 14; ++n)
        min_drift = std::min(min_drift,
                             std::abs(strat1d_sum(F, w, seg, n).value - ito1d_sum(F, w, seg, n).value));
    return {worst <= 8.0 && min_drift > 0.01,
            "max strat error " + fmt("%.2f eps", worst) + ", min left-point drift " + fmt("%.3g", min_drift)};
}

Outcome c12_weakened() {
    const auto [g1, g2] = random_pair(0.55, 0, 1);
    const ComposedIntegrand F = composed_integrand("y1y2");
    std::vector<double> v, eb;
    for (int n = 4; n <= 12; ++n) {
        const IntegralResult r = integrate_composed(F, g1, g2, kStd, n);
        v.push_back(r.value);
        eb.push_back(r.error_bound);
    }
    bool decreasing = true, cauchy = true;
    std::string incs;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double d = std::abs(v[i + 1] - v[i]);
        incs += (i ? " " : "") + fmt("%.2g", d);
        cauchy = cauchy && d <= eb[i] + eb[i + 1];
        if (i > 0) decreasing = decreasing && d < std::abs(v[i] - v[i - 1]);
    }
    const bool composed_cert = exponent_certificate(F, g1, g2).certified();
    const bool plain_cert = plain_triple(F, g1, g2).certified_regime();
    return {decreasing && cauchy && composed_cert && !plain_cert,
            std::string("increments n=4..11: ") + incs + "; decreasing " + (decreasing ? "yes" : "no") +
                ", within certified envelope " + (cauchy ? "yes" : "no") + ", composed certificate " +
                (composed_cert ? "yes" : "no") + ", plain certificate " + (plain_cert ? "yes" : "no")};
}

Outcome c13_vanishing() {
    const ScalarField h = make_weierstrass(0.8, 2, 14, 0);
    const double lip = 1.0;
    const FormTriple t{ScalarField::constant(1.0),
                       compose([](double u) { return std::sin(u); }, h, lip, 1.0, "sin o h"),
                       compose([](double u) { return std::cos(u); }, h, lip, 1.0, "cos o h")};
    const VanishingResult r = vanishing_form_check(t, kStd, 10);
    const bool ok = r.value < 10 * r.error_bound && r.value < 1e-2 * r.naive_germ;
    return {ok, "|value| " + fmt("%.3g", r.value) + ", bound " + fmt("%.3g", r.error_bound) + ", naive germ " +
                    fmt("%.3g", r.naive_germ)};
}

Outcome c14_properties(const char* test_binary) {
    const std::string cmd = std::string("\"") + test_binary + "\" --test-suite=properties --minimal > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    json cfg = {{"command", "bounds-audit"},
                {"samples", 10000},
                {"integrand", "y1y2"},
                {"fields",
                 {{"f", {{"kind", "trig"}, {"params", {{"fn", "cos"}, {"freq", {1.0, 1.0}}}}}},
                  {"g1", {{"kind", "weierstrass"}, {"params", {{"beta", 0.85}, {"terms", 14}, {"seed", 0}}}}},
                  {"g2", {{"kind", "weierstrass"}, {"params", {{"beta", 0.85}, {"terms", 14}, {"seed", 1}}}}}}}};
    const RunResult audit = run(parse_config(cfg));
    const long long violations = audit.report.summary.at("violations").get<long long>();
    return {rc == 0 && violations == 0,
            std::string("property suite ") + (rc == 0 ? "passed" : "FAILED") + ", bounds-audit violations " +
                std::to_string(violations) + " on 10000 simplices"};
}

} // namespace

int main(int argc, char** argv) {
    const char* test_binary = argc > 1 ? argv[1] : "roughint_tests";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"affine exactness", c1_affine_exactness},
        {"smooth oracle agreement", c2_smooth_oracle},
        {"rate reproduction", c3_rate},
        {"ito and strat share the limit", c4_ito_strat},
        {"nonatomicity on a collinear triangle", c5_nonatomic},
        {"stokes", c6_stokes},
        {"polygon fan apex independence", c7_polygon},
        {"domain convergence", c8_domain},
        {"chain rule", c9_chain_rule},
        {"degree identity", c10_degree},
        {"1D strat exactness and left-point drift", c11_strat1d},
        {"weakened-exponent convergence", c12_weakened},
        {"vanishing forms", c13_vanishing},
        {"property suites and bounds audit", [&] { return c14_properties(test_binary); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
