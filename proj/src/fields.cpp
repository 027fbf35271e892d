#include "roughint/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace roughint {

namespace {

using nlohmann::json;

class AffineImpl final : public FieldImpl {
public:
    AffineImpl(double c, double a1, double a2) : c_(c), a1_(a1), a2_(a2) {}
    double eval(Point2 p) const override { return c_ + a1_ * p.x1 + a2_ * p.x2; }
    void eval_many(const double* x1, const double* x2, double* out, std::size_t n) const override {
        for (std::size_t i = 0; i < n; ++i) out[i] = c_ + a1_ * x1[i] + a2_ * x2[i];
    }

private:
    double c_, a1_, a2_;
};

struct Monomial {
    double coef;
    int i, j;
};

class PolynomialImpl final : public FieldImpl {
public:
    explicit PolynomialImpl(std::vector<Monomial> terms) : terms_(std::move(terms)) {}
    double eval(Point2 p) const override {
        double s = 0.0;
        for (const auto& m : terms_) s += m.coef * ipow(p.x1, m.i) * ipow(p.x2, m.j);
        return s;
    }

private:
    static double ipow(double x, int k) {
        double r = 1.0;
        for (int i = 0; i < k; ++i) r *= x;
        return r;
    }
    std::vector<Monomial> terms_;
};

class TrigImpl final : public FieldImpl {
public:
    TrigImpl(bool use_sin, double k1, double k2, double phase, double amp)
        : sin_(use_sin), k1_(k1), k2_(k2), phase_(phase), amp_(amp) {}
    double eval(Point2 p) const override {
        const double t = k1_ * p.x1 + k2_ * p.x2 + phase_;
        return amp_ * (sin_ ? std::sin(t) : std::cos(t));
    }

private:
    bool sin_;
    double k1_, k2_, phase_, amp_;
};

class WeierstrassImpl final : public FieldImpl {
public:
    struct Term {
        double amp, c, s, phase;
    };
    explicit WeierstrassImpl(std::vector<Term> terms) : terms_(std::move(terms)) {}
    double eval(Point2 p) const override {
        double sum = 0.0;
        for (const auto& t : terms_) sum += t.amp * std::cos(t.c * p.x1 + t.s * p.x2 + t.phase);
        return sum;
    }
    void eval_many(const double* x1, const double* x2, double* out, std::size_t n) const override {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        for (const auto& t : terms_)
            for (std::size_t i = 0; i < n; ++i) out[i] += t.amp * std::cos(t.c * x1[i] + t.s * x2[i] + t.phase);
    }

private:
    std::vector<Term> terms_;
};

class FunctionImpl final : public FieldImpl {
public:
    explicit FunctionImpl(std::function<double(Point2)> fn) : fn_(std::move(fn)) {}
    double eval(Point2 p) const override { return fn_(p); }

private:
    std::function<double(Point2)> fn_;
};

class ComposedImpl final : public FieldImpl {
public:
    ComposedImpl(std::function<double(double)> phi, ScalarField inner) : phi_(std::move(phi)), inner_(std::move(inner)) {}
    double eval(Point2 p) const override { return phi_(inner_(p)); }
    void eval_many(const double* x1, const double* x2, double* out, std::size_t n) const override {
        inner_.eval_many(x1, x2, out, n);
        for (std::size_t i = 0; i < n; ++i) out[i] = phi_(out[i]);
    }

private:
    std::function<double(double)> phi_;
    ScalarField inner_;
};

class SumImpl final : public FieldImpl {
public:
    SumImpl(double a, ScalarField u, double b, ScalarField v) : a_(a), b_(b), u_(std::move(u)), v_(std::move(v)) {}
    double eval(Point2 p) const override { return a_ * u_(p) + b_ * v_(p); }
    void eval_many(const double* x1, const double* x2, double* out, std::size_t n) const override {
        std::vector<double> tmp(n);
        u_.eval_many(x1, x2, out, n);
        v_.eval_many(x1, x2, tmp.data(), n);
        for (std::size_t i = 0; i < n; ++i) out[i] = a_ * out[i] + b_ * tmp[i];
    }

private:
    double a_, b_;
    ScalarField u_, v_;
};

double abs_sup(double lo, double hi) { return std::max(std::abs(lo), std::abs(hi)); }

double require_number(const json& p, const char* key) {
    if (!p.contains(key) || !p.at(key).is_number())
        throw ConfigError(std::string("field spec: missing numeric parameter '") + key + "'");
    return p.at(key).get<double>();
}

double number_or(const json& p, const char* key, double def) {
    if (!p.contains(key)) return def;
    if (!p.at(key).is_number()) throw ConfigError(std::string("field spec: parameter '") + key + "' must be numeric");
    return p.at(key).get<double>();
}

std::pair<double, double> pair_param(const json& p, const char* key) {
    if (!p.contains(key) || !p.at(key).is_array() || p.at(key).size() != 2)
        throw ConfigError(std::string("field spec: parameter '") + key + "' must be a 2-element array");
    return {p.at(key)[0].get<double>(), p.at(key)[1].get<double>()};
}

ScalarField build_affine(const json& p, const Box& box) {
    const double c = number_or(p, "c", 0.0);
    const auto [a1, a2] = pair_param(p, "a");
    double sup = 0.0;
    for (double x : {box.x0, box.x1})
        for (double y : {box.y0, box.y1}) sup = std::max(sup, std::abs(c + a1 * x + a2 * y));
    return ScalarField(std::make_shared<AffineImpl>(c, a1, a2), 1.0, std::hypot(a1, a2), sup, box, "affine");
}

ScalarField build_polynomial(const json& p, const Box& box) {
    if (!p.contains("terms") || !p.at("terms").is_array())
        throw ConfigError("field spec: polynomial needs 'terms' = [[coef, i, j], ...]");
    std::vector<Monomial> terms;
    for (const auto& t : p.at("terms")) {
        if (!t.is_array() || t.size() != 3) throw ConfigError("field spec: polynomial term must be [coef, i, j]");
        const int i = t[1].get<int>(), j = t[2].get<int>();
        if (i < 0 || j < 0) throw ConfigError("field spec: negative polynomial degree");
        terms.push_back({t[0].get<double>(), i, j});
    }
    const double X = abs_sup(box.x0, box.x1), Y = abs_sup(box.y0, box.y1);
    double sup = 0.0, d1 = 0.0, d2 = 0.0;
    for (const auto& m : terms) {
        const double c = std::abs(m.coef);
        sup += c * std::pow(X, m.i) * std::pow(Y, m.j);
        if (m.i > 0) d1 += c * m.i * std::pow(X, m.i - 1) * std::pow(Y, m.j);
        if (m.j > 0) d2 += c * m.j * std::pow(X, m.i) * std::pow(Y, m.j - 1);
    }
    return ScalarField(std::make_shared<PolynomialImpl>(std::move(terms)), 1.0, std::hypot(d1, d2), sup, box,
                       "polynomial");
}

ScalarField build_trig(const json& p, const Box& box) {
    const std::string fn = p.value("fn", std::string("sin"));
    if (fn != "sin" && fn != "cos") throw ConfigError("field spec: trig 'fn' must be sin or cos");
    const auto [k1, k2] = pair_param(p, "freq");
    const double phase = number_or(p, "phase", 0.0);
    const double amp = number_or(p, "amp", 1.0);
    return ScalarField(std::make_shared<TrigImpl>(fn == "sin", k1, k2, phase, amp), 1.0,
                       std::abs(amp) * std::hypot(k1, k2), std::abs(amp), box, "trig");
}

WeierstrassOptions weierstrass_options(const json& p) {
    WeierstrassOptions o;
    o.beta = require_number(p, "beta");
    o.base = static_cast<int>(number_or(p, "base", 2));
    o.terms = static_cast<int>(require_number(p, "terms"));
    o.seed = p.contains("seed") ? p.at("seed").get<std::uint64_t>() : 0;
    if (p.contains("direction") && !p.at("direction").is_null()) o.direction = p.at("direction").get<double>();
    o.phase_shift = number_or(p, "phase_shift", 0.0);
    o.random_phase = p.value("random_phase", true);
    o.amplitude = number_or(p, "amp", 1.0);
    return o;
}

struct Outer {
    std::function<double(double)> fn;
    double lip;
    double sup;
};

// Outer function and its Lipschitz/sup bounds on [-range, range].
Outer outer_function(const std::string& name, double range) {
    if (name == "sin") return {[](double u) { return std::sin(u); }, 1.0, std::min(1.0, range)};
    if (name == "cos") return {[](double u) { return std::cos(u); }, std::min(1.0, range), 1.0};
    if (name == "exp") return {[](double u) { return std::exp(u); }, std::exp(range), std::exp(range)};
    if (name == "square") return {[](double u) { return u * u; }, 2.0 * range, range * range};
    if (name == "identity") return {[](double u) { return u; }, 1.0, range};
    throw ConfigError("field spec: unknown outer function '" + name + "'");
}

ScalarField build_composed(const json& p, const Box& box) {
    if (!p.contains("inner")) throw ConfigError("field spec: composed needs 'inner'");
    const ScalarField inner = field_from_spec(field_spec_from_json(p.at("inner")), box);
    const std::string name = p.value("outer", std::string("sin"));
    const double scale = number_or(p, "scale", 1.0);
    const double amp = number_or(p, "amp", 1.0);
    const Outer o = outer_function(name, std::abs(scale) * inner.sup_bound());
    auto fn = o.fn;
    return ScalarField(std::make_shared<ComposedImpl>([fn, scale, amp](double u) { return amp * fn(scale * u); }, inner),
                       inner.hoelder_exponent(), std::abs(amp) * o.lip * std::abs(scale) * inner.seminorm_bound(),
                       std::abs(amp) * o.sup, box, name + " o " + inner.description());
}

} // namespace

std::string to_string(FieldKind k) {
    switch (k) {
    case FieldKind::Affine: return "affine";
    case FieldKind::Polynomial: return "polynomial";
    case FieldKind::Trig: return "trig";
    case FieldKind::Weierstrass: return "weierstrass";
    case FieldKind::Composed: return "composed";
    }
    return "unknown";
}

FieldKind field_kind_from_string(const std::string& s) {
    if (s == "affine") return FieldKind::Affine;
    if (s == "polynomial") return FieldKind::Polynomial;
    if (s == "trig") return FieldKind::Trig;
    if (s == "weierstrass") return FieldKind::Weierstrass;
    if (s == "composed") return FieldKind::Composed;
    throw ConfigError("unknown field kind '" + s + "'");
}

nlohmann::json to_json(const FieldSpec& spec) { return {{"kind", to_string(spec.kind)}, {"params", spec.params}}; }

FieldSpec field_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ConfigError("field spec must be an object with a string 'kind'");
    FieldSpec s;
    s.kind = field_kind_from_string(j.at("kind").get<std::string>());
    s.params = j.value("params", nlohmann::json::object());
    if (!s.params.is_object()) throw ConfigError("field spec 'params' must be an object");
    return s;
}

ScalarField::ScalarField(std::shared_ptr<const FieldImpl> impl, double exponent, double seminorm, double sup, Box box,
                         std::string description)
    : impl_(std::move(impl)), exponent_(exponent), seminorm_(seminorm), sup_(sup), box_(box),
      description_(std::move(description)) {
    if (!(exponent_ > 0.0 && exponent_ <= 1.0)) throw InvalidArgument("Hoelder exponent must lie in (0, 1]");
    if (!(seminorm_ >= 0.0) || !(sup_ >= 0.0)) throw InvalidArgument("field bounds must be non-negative");
}

ScalarField ScalarField::with_spec(FieldSpec s) const {
    ScalarField out = *this;
    out.spec_ = std::move(s);
    return out;
}

ScalarField ScalarField::constant(double c, const Box& box) {
    return field_from_spec({FieldKind::Affine, {{"c", c}, {"a", {0.0, 0.0}}}}, box);
}

ScalarField ScalarField::coordinate(int i, const Box& box) {
    if (i != 0 && i != 1) throw InvalidArgument("coordinate index must be 0 or 1");
    return field_from_spec({FieldKind::Affine, {{"c", 0.0}, {"a", {i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0}}}}, box);
}

ScalarField ScalarField::from_function(std::function<double(Point2)> fn, double exponent, double seminorm, double sup,
                                       const Box& box, std::string description) {
    return ScalarField(std::make_shared<FunctionImpl>(std::move(fn)), exponent, seminorm, sup, box,
                       std::move(description));
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

double weierstrass_seminorm_bound(double beta, int base, int terms, double rmax) {
    const double a = base;
    std::vector<double> cuts{0.0, rmax};
    for (int k = 0; k < terms; ++k) {
        const double rk = 2.0 * std::pow(a, -k);
        if (rk < rmax) cuts.push_back(rk);
    }
    std::sort(cuts.begin(), cuts.end());
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (!(hi > lo)) continue;
        double A = 0.0, B = 0.0;
        for (int k = 0; k < terms; ++k) {
            if (2.0 * std::pow(a, -k) <= lo)
                B += 2.0 * std::pow(a, -k * beta);
            else
                A += std::pow(a, k * (1.0 - beta));
        }
        if (lo == 0.0) {
            best = std::max(best, A * std::pow(hi, 1.0 - beta));
            continue;
        }
        constexpr int pieces = 64;
        const double ratio = std::pow(hi / lo, 1.0 / pieces);
        double l = lo;
        for (int j = 0; j < pieces; ++j) {
            const double h = (j + 1 == pieces) ? hi : l * ratio;
            best = std::max(best, A * std::pow(h, 1.0 - beta) + B * std::pow(l, -beta));
            l = h;
        }
    }
    return best;
}

ScalarField make_weierstrass(const WeierstrassOptions& o, const Box& box) {
    if (!(o.beta > 0.0 && o.beta < 1.0)) throw InvalidArgument("weierstrass: beta must lie in (0, 1)");
    if (o.base < 2) throw InvalidArgument("weierstrass: base must be an integer >= 2");
    if (o.terms < 1 || o.terms > 60) throw InvalidArgument("weierstrass: terms must lie in [1, 60]");
    std::mt19937_64 rng(o.seed);
    std::vector<WeierstrassImpl::Term> terms;
    double sup = 0.0;
    for (int k = 0; k < o.terms; ++k) {
        const double u_dir = unit_uniform(rng());
        const double u_phase = unit_uniform(rng());
        const double theta = o.direction ? *o.direction : 2.0 * std::numbers::pi * u_dir;
        const double phase = (o.random_phase ? 2.0 * std::numbers::pi * u_phase : 0.0) + o.phase_shift;
        const double freq = std::pow(static_cast<double>(o.base), k);
        const double amp = o.amplitude * std::pow(static_cast<double>(o.base), -k * o.beta);
        terms.push_back({amp, freq * std::cos(theta), freq * std::sin(theta), phase});
        sup += std::abs(amp);
    }
    const double semi = std::abs(o.amplitude) * weierstrass_seminorm_bound(o.beta, o.base, o.terms, box.diameter());
    return ScalarField(std::make_shared<WeierstrassImpl>(std::move(terms)), o.beta, semi, sup, box, "weierstrass");
}

ScalarField make_weierstrass(double beta, int base, int terms, std::uint64_t seed, const Box& box) {
    WeierstrassOptions o;
    o.beta = beta;
    o.base = base;
    o.terms = terms;
    o.seed = seed;
    return make_weierstrass(o, box);
}

ScalarField field_from_spec(const FieldSpec& spec, const Box& box) {
    const json& p = spec.params;
    ScalarField f;
    switch (spec.kind) {
    case FieldKind::Affine: f = build_affine(p, box); break;
    case FieldKind::Polynomial: f = build_polynomial(p, box); break;
    case FieldKind::Trig: f = build_trig(p, box); break;
    case FieldKind::Weierstrass: f = make_weierstrass(weierstrass_options(p), box); break;
    case FieldKind::Composed: f = build_composed(p, box); break;
    }
    return f.with_spec(spec);
}

ScalarField linear_combination(double a, const ScalarField& u, double b, const ScalarField& v) {
    const double alpha = std::min(u.hoelder_exponent(), v.hoelder_exponent());
    const double D = u.box().diameter();
    const double semi = std::abs(a) * u.seminorm_bound() * std::pow(D, u.hoelder_exponent() - alpha) +
                        std::abs(b) * v.seminorm_bound() * std::pow(D, v.hoelder_exponent() - alpha);
    const double sup = std::abs(a) * u.sup_bound() + std::abs(b) * v.sup_bound();
    return ScalarField(std::make_shared<SumImpl>(a, u, b, v), alpha, semi, sup, u.box(),
                       "linear combination of " + u.description() + " and " + v.description());
}

ScalarField compose(std::function<double(double)> phi, const ScalarField& u, double lip, double sup,
                    std::string description) {
    return ScalarField(std::make_shared<ComposedImpl>(std::move(phi), u), u.hoelder_exponent(), lip * u.seminorm_bound(),
                       sup, u.box(), std::move(description));
}

double estimate_seminorm(const ScalarField& f, const Box& box, int samples, double scale_min, std::uint64_t seed) {
    if (samples < 2) throw InvalidArgument("estimate_seminorm: samples must be >= 2");
    const double alpha = f.hoelder_exponent();
    const double rmax = 0.5 * box.diameter();
    const double lmin = std::log(scale_min), lmax = std::log(rmax);
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Point2 u{box.x0 + box.width() * unit_uniform(rng()), box.y0 + box.height() * unit_uniform(rng())};
        const double r = std::exp(lmin + (lmax - lmin) * unit_uniform(rng()));
        const double th = 2.0 * std::numbers::pi * unit_uniform(rng());
        const Point2 d{r * std::cos(th), r * std::sin(th)};
        Point2 v = u + d;
        if (!box.contains(v)) v = u - d;
        if (!box.contains(v)) continue;
        const double dist = distance(u, v);
        if (dist == 0.0) continue;
        best = std::max(best, std::abs(f(v) - f(u)) / std::pow(dist, alpha));
    }
    return best;
}

} // namespace roughint
