#include "roughint/irregular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

namespace roughint {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs(double a, double b) { return std::max(std::abs(a), std::abs(b)); }

class ComposedEvaluator final : public NodeEvaluator {
public:
    ComposedEvaluator(ComposedIntegrand c, ScalarField g1, ScalarField g2)
        : c_(std::move(c)), g1_(std::move(g1)), g2_(std::move(g2)) {}

    void eval(const double* x1, const double* x2, std::size_t n, double* f, double* g1, double* g2) const override {
        g1_.eval_many(x1, x2, g1, n);
        g2_.eval_many(x1, x2, g2, n);
        for (std::size_t i = 0; i < n; ++i) f[i] = c_.F({x1[i], x2[i]}, {g1[i], g2[i]});
    }

private:
    ComposedIntegrand c_;
    ScalarField g1_;
    ScalarField g2_;
};

double gradient_spread(const ScalarField& g1, const ScalarField& g2, double D, double b) {
    const double s1 = g1.seminorm_bound() * std::pow(D, g1.hoelder_exponent() - b);
    const double s2 = g2.seminorm_bound() * std::pow(D, g2.hoelder_exponent() - b);
    return std::hypot(s1, s2);
}

Point2 json_point(const json& j, const char* key, Point2 def) {
    if (!j.contains(key)) return def;
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 2) throw ConfigError(std::string("'") + key + "' must be [x, y]");
    return {a[0].get<double>(), a[1].get<double>()};
}

ComposedIntegrand make_gauss(double scale) {
    if (!(scale > 0.0)) throw InvalidArgument("gauss: scale must be positive");
    auto c = composed_from_phi(
        "gauss", [scale](Point2 y) { return std::exp(-scale * (y.x1 * y.x1 + y.x2 * y.x2)); },
        [scale](Point2 y) {
            const double e = -2.0 * scale * std::exp(-scale * (y.x1 * y.x1 + y.x2 * y.x2));
            return std::array<double, 2>{e * y.x1, e * y.x2};
        },
        1.0, [scale](const Box&) { return ComposedBounds{1.0, std::sqrt(2.0 * scale / std::exp(1.0)), 2.0 * scale, 0.0}; });
    c.params = {{"name", "gauss"}, {"scale", scale}};
    return c;
}

ComposedIntegrand make_bump(Point2 center, double r) {
    if (!(r > 0.0)) throw InvalidArgument("bump: radius must be positive");
    auto c = composed_from_phi(
        "bump",
        [center, r](Point2 y) {
            const double u = (distance(y, center) * distance(y, center)) / (r * r);
            return u < 1.0 ? (1.0 - u) * (1.0 - u) * (1.0 - u) : 0.0;
        },
        [center, r](Point2 y) {
            const double u = (distance(y, center) * distance(y, center)) / (r * r);
            if (u >= 1.0) return std::array<double, 2>{0.0, 0.0};
            const double k = -6.0 * (1.0 - u) * (1.0 - u) / (r * r);
            return std::array<double, 2>{k * (y.x1 - center.x1), k * (y.x2 - center.x2)};
        },
        1.0, [r](const Box&) { return ComposedBounds{1.0, 1.75 / r, 6.0 / (r * r), 0.0}; });
    c.params = {{"name", "bump"}, {"center", {center.x1, center.x2}}, {"radius", r}};
    return c;
}

} // namespace

ComposedIntegrand composed_from_phi(std::string name, std::function<double(Point2)> phi,
                                    std::function<std::array<double, 2>(Point2)> grad, double gamma,
                                    std::function<ComposedBounds(const Box& ybox)> bounds) {
    ComposedIntegrand c;
    c.name = name;
    c.F = [phi](Point2, Point2 y) { return phi(y); };
    c.grad_y = [grad](Point2, Point2 y) { return grad(y); };
    c.alpha = 1.0;
    c.gamma = gamma;
    c.bounds = [bounds](const Box&, const Box& ybox) { return bounds(ybox); };
    c.params = {{"name", std::move(name)}};
    return c;
}

ComposedIntegrand composed_integrand(const std::string& name) {
    if (name == "one")
        return composed_from_phi(
            name, [](Point2) { return 1.0; }, [](Point2) { return std::array<double, 2>{0.0, 0.0}; }, 1.0,
            [](const Box&) { return ComposedBounds{1.0, 0.0, 0.0, 0.0}; });
    if (name == "y1" || name == "y2") {
        const int i = name == "y1" ? 0 : 1;
        return composed_from_phi(
            name, [i](Point2 y) { return i == 0 ? y.x1 : y.x2; },
            [i](Point2) { return std::array<double, 2>{i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0}; }, 1.0,
            [i](const Box& b) {
                return ComposedBounds{i == 0 ? max_abs(b.x0, b.x1) : max_abs(b.y0, b.y1), 1.0, 0.0, 0.0};
            });
    }
    if (name == "y1y2")
        return composed_from_phi(
            name, [](Point2 y) { return y.x1 * y.x2; },
            [](Point2 y) { return std::array<double, 2>{y.x2, y.x1}; }, 1.0, [](const Box& b) {
                const double m1 = max_abs(b.x0, b.x1), m2 = max_abs(b.y0, b.y1);
                return ComposedBounds{m1 * m2, std::hypot(m1, m2), 1.0, 0.0};
            });
    if (name == "x1") {
        ComposedIntegrand c;
        c.name = name;
        c.F = [](Point2 x, Point2) { return x.x1; };
        c.grad_y = [](Point2, Point2) { return std::array<double, 2>{0.0, 0.0}; };
        c.bounds = [](const Box& xb, const Box&) { return ComposedBounds{max_abs(xb.x0, xb.x1), 0.0, 0.0, 1.0}; };
        c.params = {{"name", name}};
        return c;
    }
    if (name == "gauss") return make_gauss(1.0);
    if (name == "bump") return make_bump({3.0, 3.0}, 0.5);
    throw ConfigError("unknown composed integrand '" + name + "'");
}

ComposedIntegrand composed_from_json(const json& j) {
    if (j.is_string()) return composed_integrand(j.get<std::string>());
    if (!j.is_object() || !j.contains("name")) throw ConfigError("composed integrand needs a 'name'");
    const std::string name = j.at("name").get<std::string>();
    ComposedIntegrand c = name == "gauss"  ? make_gauss(j.value("scale", 1.0))
                          : name == "bump" ? make_bump(json_point(j, "center", {3.0, 3.0}), j.value("radius", 0.5))
                                           : composed_integrand(name);
    // Only C^{1,1} is known for the data behind this integrand: accepted,
    // carried through to reports.
    if (j.contains("c11_only")) {
        if (!j.at("c11_only").is_boolean()) throw ConfigError("'c11_only' must be a boolean");
        c.c11_only = j.at("c11_only").get<bool>();
        c.params["c11_only"] = c.c11_only;
    }
    return c;
}

std::vector<std::string> composed_integrand_names() { return {"one", "y1", "y2", "y1y2", "x1", "gauss", "bump"}; }

GradientAudit audit_gradient(const ComposedIntegrand& c, const Box& xbox, const Box& ybox, int samples,
                             std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    auto in = [&](double a, double b) { return a + (b - a) * unit_uniform(rng()); };
    GradientAudit a;
    a.samples = samples;
    for (int k = 0; k < samples; ++k) {
        const Point2 x{in(xbox.x0, xbox.x1), in(xbox.y0, xbox.y1)};
        const Point2 y{in(ybox.x0, ybox.x1), in(ybox.y0, ybox.y1)};
        const auto g = c.grad_y(x, y);
        for (int i = 0; i < 2; ++i) {
            const double h = 1e-5 * std::max(1.0, std::abs(i == 0 ? y.x1 : y.x2));
            const Point2 e = i == 0 ? Point2{h, 0.0} : Point2{0.0, h};
            const double fd = (c.F(x, y + e) - c.F(x, y - e)) / (2.0 * h);
            a.max_error = std::max(a.max_error, std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])));
        }
    }
    a.passed = a.max_error <= tol;
    return a;
}

Box value_box(const ScalarField& g1, const ScalarField& g2) {
    return {-g1.sup_bound(), -g2.sup_bound(), g1.sup_bound(), g2.sup_bound()};
}

ExponentCertificate exponent_certificate(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2) {
    ExponentCertificate e;
    e.alpha = c.alpha;
    e.beta1 = g1.hoelder_exponent();
    e.beta2 = g2.hoelder_exponent();
    e.gamma = c.gamma;
    const double sum = e.beta1 + e.beta2;
    e.cond1 = e.alpha + sum > 2.0;
    e.cond2 = {(1.0 + e.gamma) * e.beta1 + sum > 2.0, (1.0 + e.gamma) * e.beta2 + sum > 2.0};
    e.d = std::min(e.alpha, (1.0 + e.gamma) * std::min(e.beta1, e.beta2)) + sum;
    return e;
}

ScalarField compose_integrand(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2) {
    const Box xbox = g1.box();
    const ComposedBounds B = c.bounds(xbox, value_box(g1, g2));
    const double a = std::min({c.alpha, g1.hoelder_exponent(), g2.hoelder_exponent()});
    const double D = xbox.diameter();
    const double semi = B.x_seminorm * std::pow(D, c.alpha - a) + B.sup_grad * gradient_spread(g1, g2, D, a);
    auto F = c.F;
    return ScalarField::from_function([F, g1, g2](Point2 x) { return F(x, {g1(x), g2(x)}); }, a, semi, B.sup_F, xbox,
                                      c.name + " o (x, g)");
}

FormTriple plain_triple(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2) {
    return {compose_integrand(c, g1, g2), g1, g2};
}

SewingParams composed_sewing_params(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2,
                                    double dmax) {
    const ComposedBounds B = c.bounds(g1.box(), value_box(g1, g2));
    const ExponentCertificate e = exponent_certificate(c, g1, g2);
    const double bm = std::min(e.beta1, e.beta2);
    const double m = e.d - e.beta1 - e.beta2;
    const double G = gradient_spread(g1, g2, dmax, bm);
    const double lead = 0.5 * std::sqrt(3.0) * g1.seminorm_bound() * g2.seminorm_bound();
    const double C2 = lead * (B.x_seminorm * std::pow(dmax, e.alpha - m) +
                              B.grad_seminorm * std::pow(G, 1.0 + e.gamma) / (1.0 + e.gamma) *
                                  std::pow(dmax, (1.0 + e.gamma) * bm - m));
    GermBounds gb;
    gb.gamma1 = e.beta1 + e.beta2;
    gb.C1 = B.sup_F * g1.seminorm_bound() * g2.seminorm_bound();
    gb.gamma2 = e.d;
    gb.C2 = C2;
    return sewing_params(gb);
}

BoundCheck composed_delta_bound_check(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2,
                                      const Simplex3& q) {
    const double D = diam(q);
    const SewingParams p = composed_sewing_params(c, g1, g2, D);
    return delta_det_check(plain_triple(c, g1, g2), q, p.C2 * std::pow(D, p.gamma2));
}

std::shared_ptr<const NodeEvaluator> composed_node_evaluator(const ComposedIntegrand& c, const ScalarField& g1,
                                                             const ScalarField& g2) {
    return std::make_shared<ComposedEvaluator>(c, g1, g2);
}

IntegralResult integrate_composed(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2,
                                  const Simplex2& s, int level, const IntegrateOptions& opt) {
    const ExponentCertificate e = exponent_certificate(c, g1, g2);
    if (e.beta1 + e.beta2 <= 1.0) throw InvalidArgument("integrate_composed: beta1 + beta2 must exceed 1");
    const SewingParams p = composed_sewing_params(c, g1, g2, diam(s));
    const bool certified = e.certified() && std::isfinite(p.C1) && std::isfinite(p.C2);
    if (!certified && opt.mode == CertMode::Strict) {
        std::ostringstream os;
        os << "composed exponent conditions fail (alpha+b1+b2 = " << e.alpha + e.beta1 + e.beta2
           << ", (1+gamma) beta_i + b1 + b2 = " << (1 + e.gamma) * e.beta1 + e.beta1 + e.beta2 << ", "
           << (1 + e.gamma) * e.beta2 + e.beta1 + e.beta2 << ")";
        throw CertificationError(os.str());
    }
    const auto nodes = composed_node_evaluator(c, g1, g2);
    const LatticeSums sums = simplex_sums(*nodes, s, level, opt.summation);
    IntegralResult r;
    r.scheme = Scheme::Strat;
    r.level = level;
    r.value = sums.strat;
    r.strat_value = sums.strat;
    r.ito_value = sums.ito;
    r.ito_strat_gap = std::abs(sums.strat - sums.ito);
    r.certified = certified;
    r.error_bound = certified ? sewing_error_bound(p, s, level) : kInf;
    return r;
}

SmoothMap2 smooth_map(const std::string& name, double theta) {
    SmoothMap2 m;
    m.name = name;
    m.params = {{"name", name}};
    if (name == "identity") {
        m.map = [](Point2 y) { return y; };
        m.jacobian = [](Point2) { return std::array<double, 4>{1.0, 0.0, 0.0, 1.0}; };
        m.grad_det = [](Point2) { return std::array<double, 2>{0.0, 0.0}; };
        m.bounds = [](const Box& b) {
            return SmoothMapBounds{{max_abs(b.x0, b.x1), max_abs(b.y0, b.y1)}, {1.0, 1.0}, 1.0, 0.0, 0.0};
        };
    } else if (name == "square1") {
        m.map = [](Point2 y) { return Point2{y.x1 * y.x1, y.x2}; };
        m.jacobian = [](Point2 y) { return std::array<double, 4>{2.0 * y.x1, 0.0, 0.0, 1.0}; };
        m.grad_det = [](Point2) { return std::array<double, 2>{2.0, 0.0}; };
        m.bounds = [](const Box& b) {
            const double m1 = max_abs(b.x0, b.x1);
            return SmoothMapBounds{{m1 * m1, max_abs(b.y0, b.y1)}, {2.0 * m1, 1.0}, 2.0 * m1, 2.0, 0.0};
        };
    } else if (name == "rotation") {
        const double c = std::cos(theta), s = std::sin(theta);
        m.map = [c, s](Point2 y) { return Point2{c * y.x1 - s * y.x2, s * y.x1 + c * y.x2}; };
        m.jacobian = [c, s](Point2) { return std::array<double, 4>{c, -s, s, c}; };
        m.grad_det = [](Point2) { return std::array<double, 2>{0.0, 0.0}; };
        m.bounds = [](const Box& b) {
            const double r = std::hypot(max_abs(b.x0, b.x1), max_abs(b.y0, b.y1));
            return SmoothMapBounds{{r, r}, {1.0, 1.0}, 1.0, 0.0, 0.0};
        };
        m.params["theta"] = theta;
    } else if (name == "complex_square") {
        m.map = [](Point2 y) { return Point2{y.x1 * y.x1 - y.x2 * y.x2, 2.0 * y.x1 * y.x2}; };
        m.jacobian = [](Point2 y) { return std::array<double, 4>{2.0 * y.x1, -2.0 * y.x2, 2.0 * y.x2, 2.0 * y.x1}; };
        m.grad_det = [](Point2 y) { return std::array<double, 2>{8.0 * y.x1, 8.0 * y.x2}; };
        m.bounds = [](const Box& b) {
            const double r = std::hypot(max_abs(b.x0, b.x1), max_abs(b.y0, b.y1));
            return SmoothMapBounds{{r * r, r * r}, {2.0 * r, 2.0 * r}, 4.0 * r * r, 8.0 * r, 8.0};
        };
    } else {
        throw ConfigError("unknown smooth map '" + name + "'");
    }
    return m;
}

SmoothMap2 smooth_map_from_json(const json& j) {
    if (j.is_string()) return smooth_map(j.get<std::string>());
    if (!j.is_object() || !j.contains("name")) throw ConfigError("smooth map needs a 'name'");
    return smooth_map(j.at("name").get<std::string>(), j.value("theta", 0.0));
}

ScalarField compose_map(const SmoothMap2& psi, int i, const ScalarField& h1, const ScalarField& h2) {
    if (i != 0 && i != 1) throw InvalidArgument("compose_map: component must be 0 or 1");
    const SmoothMapBounds B = psi.bounds(value_box(h1, h2));
    const double a = std::min(h1.hoelder_exponent(), h2.hoelder_exponent());
    const double semi = B.sup_grad[i] * gradient_spread(h1, h2, h1.box().diameter(), a);
    auto map = psi.map;
    return ScalarField::from_function(
        [map, h1, h2, i](Point2 x) {
            const Point2 v = map({h1(x), h2(x)});
            return i == 0 ? v.x1 : v.x2;
        },
        a, semi, B.sup_value[i], h1.box(), psi.name + "_" + std::to_string(i + 1) + " o h");
}

ComposedIntegrand times_jacobian(const ComposedIntegrand& c, const SmoothMap2& psi) {
    ComposedIntegrand out = c;
    out.name = c.name + " * det Dpsi";
    auto F = c.F;
    auto grad = c.grad_y;
    out.F = [F, psi](Point2 x, Point2 y) { return F(x, y) * psi.det(y); };
    out.grad_y = [F, grad, psi](Point2 x, Point2 y) {
        const double d = psi.det(y), f = F(x, y);
        const auto gF = grad(x, y), gd = psi.grad_det(y);
        return std::array<double, 2>{gF[0] * d + f * gd[0], gF[1] * d + f * gd[1]};
    };
    auto bounds = c.bounds;
    const double gamma = c.gamma;
    out.bounds = [bounds, psi, gamma](const Box& xbox, const Box& ybox) {
        const ComposedBounds b = bounds(xbox, ybox);
        const SmoothMapBounds m = psi.bounds(ybox);
        const double Dg = std::pow(ybox.diameter(), 1.0 - gamma);
        ComposedBounds r;
        r.sup_F = b.sup_F * m.sup_det;
        r.sup_grad = b.sup_grad * m.sup_det + b.sup_F * m.sup_grad_det;
        r.grad_seminorm =
            m.sup_det * b.grad_seminorm + Dg * (2.0 * b.sup_grad * m.sup_grad_det + b.sup_F * m.lip_grad_det);
        r.x_seminorm = b.x_seminorm * m.sup_det;
        return r;
    };
    out.params = {{"name", out.name}, {"base", c.params}, {"map", psi.params}};
    return out;
}

ChainRuleResult chain_rule_residual(const ComposedIntegrand& c, const SmoothMap2& psi, const ScalarField& h1,
                                    const ScalarField& h2, const Simplex2& s, int level,
                                    const IntegrateOptions& opt) {
    if (h1.hoelder_exponent() <= 0.5 || h2.hoelder_exponent() <= 0.5)
        throw InvalidArgument("chain_rule_residual: exponents of h must exceed 1/2");
    const FormTriple lhs_t{compose_integrand(c, h1, h2), compose_map(psi, 0, h1, h2), compose_map(psi, 1, h1, h2)};
    const IntegralResult L = integrate_simplex(lhs_t, s, Scheme::Strat, level, opt);
    const IntegralResult R = integrate_composed(times_jacobian(c, psi), h1, h2, s, level, opt);
    ChainRuleResult out;
    out.lhs = L.value;
    out.rhs = R.value;
    out.residual = std::abs(L.value - R.value);
    out.certified = L.certified && R.certified;
    out.tolerance = out.certified ? L.error_bound + R.error_bound : kInf;
    return out;
}

std::string to_string(CurrentComponent c) {
    switch (c) {
    case CurrentComponent::Dx1Dx2: return "dx1dx2";
    case CurrentComponent::Dx1Dy2: return "dx1dy2";
    case CurrentComponent::Dx2Dy1: return "dx2dy1";
    case CurrentComponent::Dy1Dy2: return "dy1dy2";
    }
    return "unknown";
}

CurrentComponent current_component_from_string(const std::string& s) {
    if (s == "dx1dx2") return CurrentComponent::Dx1Dx2;
    if (s == "dx1dy2") return CurrentComponent::Dx1Dy2;
    if (s == "dx2dy1") return CurrentComponent::Dx2Dy1;
    if (s == "dy1dy2") return CurrentComponent::Dy1Dy2;
    throw ConfigError("unknown current component '" + s + "'");
}

namespace {

double centroid_sum(const ScalarField& f, const Simplex2& s, int n) {
    if (n == 0) {
        const Point2 c{(s.v[0].x1 + s.v[1].x1 + s.v[2].x1) / 3.0, (s.v[0].x2 + s.v[1].x2 + s.v[2].x2) / 3.0};
        return signed_area(s) * f(c);
    }
    const auto ch = dya_children(s);
    return (centroid_sum(f, ch[0], n - 1) + centroid_sum(f, ch[1], n - 1)) +
           (centroid_sum(f, ch[2], n - 1) + centroid_sum(f, ch[3], n - 1));
}

} // namespace

CurrentResult current_eval(const ScalarField& g1, const ScalarField& g2, CurrentComponent comp,
                           const ComposedIntegrand& F, const Simplex2& s, int level, const IntegrateOptions& opt) {
    const double b1 = g1.hoelder_exponent(), b2 = g2.hoelder_exponent();
    const bool cond = 3.0 * b1 + b2 > 2.0 && 3.0 * b2 + b1 > 2.0;
    if (!cond && opt.mode == CertMode::Strict)
        throw CertificationError("current: 3 beta1 + beta2 > 2 and 3 beta2 + beta1 > 2 required");
    CurrentResult out;
    const ScalarField f = compose_integrand(F, g1, g2);
    switch (comp) {
    case CurrentComponent::Dx1Dx2: {
        if (level < 0 || level > kMaxDyadicLevel) throw BudgetExceeded("current: level out of range");
        out.value = centroid_sum(f, s, level);
        out.error_bound = std::abs(signed_area(s)) * f.seminorm_bound() *
                          std::pow(diam(s) * std::ldexp(1.0, -level), f.hoelder_exponent());
        out.certified = cond;
        return out;
    }
    case CurrentComponent::Dx1Dy2:
    case CurrentComponent::Dx2Dy1: {
        const bool first = comp == CurrentComponent::Dx1Dy2;
        const FormTriple t{f, ScalarField::coordinate(first ? 0 : 1, g1.box()), first ? g2 : g1};
        IntegrateOptions o = opt;
        o.mode = CertMode::Warn;
        const IntegralResult r = integrate_simplex(t, s, Scheme::Strat, level, o);
        out.value = r.value;
        out.error_bound = r.error_bound;
        out.certified = cond && r.certified;
        return out;
    }
    case CurrentComponent::Dy1Dy2: {
        IntegrateOptions o = opt;
        o.mode = CertMode::Warn;
        const IntegralResult r = integrate_composed(F, g1, g2, s, level, o);
        out.value = r.value;
        out.error_bound = r.error_bound;
        out.certified = cond && r.certified;
        return out;
    }
    }
    return out;
}

VanishingResult vanishing_form_check(const FormTriple& t, const Simplex2& s, int level, const IntegrateOptions& opt) {
    const IntegralResult r = integrate_simplex(t, s, Scheme::Strat, level, opt);
    VanishingResult out;
    out.value = std::abs(r.value);
    out.error_bound = r.error_bound;
    out.naive_germ = std::abs(strat_germ(t)(s));
    out.certified = r.certified;
    return out;
}

} // namespace roughint
