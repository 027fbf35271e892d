#include "roughint/experiment.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "roughint/domains.hpp"
#include "roughint/irregular.hpp"
#include "roughint/parallel.hpp"
#include "roughint/young1d.hpp"

namespace roughint {

namespace {

using nlohmann::json;

json affine(double c, double a1, double a2) { return {{"kind", "affine"}, {"params", {{"c", c}, {"a", {a1, a2}}}}}; }

json std_triangle() { return json::array({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}); }

json default_triple() { return {{"f", affine(1, 0, 0)}, {"g1", affine(0, 1, 0)}, {"g2", affine(0, 0, 1)}}; }

json default_body(const std::string& cmd) {
    json b = {{"box", {-1.0, -1.0, 2.0, 2.0}}};
    if (cmd == "integrate-simplex") {
        b.update({{"fields", default_triple()}, {"simplex", std_triangle()}, {"scheme", "strat"}, {"level", 8}});
    } else if (cmd == "integrate-polygon") {
        b.update({{"fields", default_triple()},
                  {"polygon", json::array({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}})},
                  {"apex", {0.0, 0.0}},
                  {"triangulation", "fan"},
                  {"scheme", "strat"},
                  {"level", 8}});
    } else if (cmd == "integrate-domain") {
        b.update({{"fields", default_triple()},
                  {"domain", {{"name", "disk"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
                  {"k_min", 2},
                  {"k_max", 6},
                  {"level", 2},
                  {"scheme", "strat"}});
    } else if (cmd == "convergence-table") {
        b.update({{"fields", default_triple()}, {"simplex", std_triangle()}, {"levels", {{"min", 0}, {"max", 10}}}});
    } else if (cmd == "stokes-check") {
        const json g1 = {{"kind", "polynomial"}, {"params", {{"terms", {{1.0, 2, 0}, {-1.0, 0, 2}}}}}};
        const json g2 = {{"kind", "polynomial"}, {"params", {{"terms", {{2.0, 1, 1}}}}}};
        b.update({{"fields", {{"f", affine(1, 0, 0)}, {"g1", g1}, {"g2", g2}}},
                  {"simplex", std_triangle()},
                  {"level", 10},
                  {"boundary_level", 14},
                  {"tolerance", 1e-5}});
    } else if (cmd == "chain-rule-check") {
        b.update({{"integrand", "one"},
                  {"map", {{"name", "square1"}}},
                  {"h", {{"h1", affine(0, 1, 0)}, {"h2", affine(0, 0, 1)}}},
                  {"simplex", std_triangle()},
                  {"level", 10}});
    } else if (cmd == "degree-check") {
        b.update({{"integrand", "one"},
                  {"h", {{"h1", affine(0, 1, 0)}, {"h2", affine(0, 0, 1)}}},
                  {"simplex", std_triangle()},
                  {"grid_level", 8},
                  {"sew_level", 8},
                  {"boundary_level", 16},
                  {"max_refine", 6},
                  {"excluded_tolerance", 1e-3},
                  {"tolerance", 1e-3}});
    } else if (cmd == "vanishing-check") {
        const json h = {{"kind", "weierstrass"}, {"params", {{"beta", 0.8}, {"base", 2}, {"terms", 14}}}};
        b.update({{"fields",
                   {{"f", affine(1, 0, 0)},
                    {"g1", {{"kind", "composed"}, {"params", {{"outer", "sin"}, {"inner", h}}}}},
                    {"g2", {{"kind", "composed"}, {"params", {{"outer", "cos"}, {"inner", h}}}}}}},
                  {"simplex", std_triangle()},
                  {"level", 10}});
    } else if (cmd == "bounds-audit") {
        b.update({{"fields", default_triple()}, {"samples", 10000}, {"audit_seed", 1}, {"integrand", nullptr}});
    } else {
        throw ConfigError("unknown command '" + cmd + "'");
    }
    return b;
}

void inject_seed(json& spec, std::uint64_t seed) {
    if (!spec.is_object()) return;
    const std::string kind = spec.value("kind", std::string());
    if (!spec.contains("params") || !spec["params"].is_object()) return;
    json& p = spec["params"];
    if (kind == "weierstrass" && !p.contains("seed")) p["seed"] = seed;
    if (kind == "composed" && p.contains("inner")) inject_seed(p["inner"], seed);
}

Box box_of(const json& b) {
    const json& a = b.at("box");
    if (!a.is_array() || a.size() != 4) throw ConfigError("'box' must be [x0, y0, x1, y1]");
    const Box box{a[0].get<double>(), a[1].get<double>(), a[2].get<double>(), a[3].get<double>()};
    if (!(box.x1 > box.x0 && box.y1 > box.y0)) throw ConfigError("'box' must have positive extent");
    return box;
}

Point2 point_of(const json& a, const std::string& what) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
        throw ConfigError("'" + what + "' points must be [x, y]");
    return {a[0].get<double>(), a[1].get<double>()};
}

Simplex2 simplex_of(const json& b) {
    const json& a = b.at("simplex");
    if (!a.is_array() || a.size() != 3) throw ConfigError("'simplex' must list 3 points");
    return Simplex2{{point_of(a[0], "simplex"), point_of(a[1], "simplex"), point_of(a[2], "simplex")}};
}

ScalarField field_of(const json& spec, const Box& box, const std::string& what) {
    try {
        return field_from_spec(field_spec_from_json(spec), box);
    } catch (const ConfigError& e) {
        throw ConfigError(what + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

FormTriple triple_of(const json& b) {
    const Box box = box_of(b);
    const json& f = b.at("fields");
    if (!f.is_object()) throw ConfigError("'fields' must be an object with f, g1, g2");
    for (const char* k : {"f", "g1", "g2"})
        if (!f.contains(k)) throw ConfigError(std::string("'fields' lacks '") + k + "'");
    return {field_of(f.at("f"), box, "fields.f"), field_of(f.at("g1"), box, "fields.g1"),
            field_of(f.at("g2"), box, "fields.g2")};
}

std::pair<ScalarField, ScalarField> h_of(const json& b) {
    const Box box = box_of(b);
    const json& h = b.at("h");
    if (!h.is_object() || !h.contains("h1") || !h.contains("h2")) throw ConfigError("'h' must hold h1 and h2");
    return {field_of(h.at("h1"), box, "h.h1"), field_of(h.at("h2"), box, "h.h2")};
}

int int_of(const json& b, const char* key, int lo, int hi) {
    const json& v = b.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    const int x = v.get<int>();
    if (x < lo || x > hi)
        throw ConfigError(std::string("'") + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "]");
    return x;
}

double positive_of(const json& b, const char* key) {
    const json& v = b.at(key);
    if (!v.is_number() || !(v.get<double>() > 0.0)) throw ConfigError(std::string("'") + key + "' must be positive");
    return v.get<double>();
}

Polygon polygon_of(const json& b) {
    const json& a = b.at("polygon");
    if (!a.is_array()) throw ConfigError("'polygon' must be a list of points");
    Polygon p;
    for (const auto& v : a) p.vertices.push_back(point_of(v, "polygon"));
    return p;
}

// Builds every object the command needs so that malformed configs fail at
// parse time.
void validate(const std::string& cmd, const json& b) {
    const std::set<std::string> allowed = [&] {
        std::set<std::string> s;
        const json defaults = default_body(cmd);
        for (const auto& [k, v] : defaults.items()) s.insert(k);
        return s;
    }();
    for (const auto& [k, v] : b.items())
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' for command " + cmd);
    box_of(b);
    if (b.contains("fields")) triple_of(b);
    if (b.contains("simplex")) simplex_of(b);
    if (b.contains("scheme")) scheme_from_string(b.at("scheme").get<std::string>());
    if (b.contains("level")) int_of(b, "level", 0, kMaxDyadicLevel);
    if (b.contains("h")) h_of(b);
    if (b.contains("integrand") && !b.at("integrand").is_null()) composed_from_json(b.at("integrand"));
    if (b.contains("map")) smooth_map_from_json(b.at("map"));
    if (b.contains("polygon")) {
        validate_polygon(polygon_of(b));
        point_of(b.at("apex"), "apex");
        const std::string tri = b.at("triangulation").get<std::string>();
        if (tri != "fan" && tri != "ear") throw ConfigError("'triangulation' must be fan or ear");
    }
    if (b.contains("domain")) {
        domain_from_json(b.at("domain"));
        const int k0 = int_of(b, "k_min", 0, 12);
        if (int_of(b, "k_max", 0, 12) < k0) throw ConfigError("'k_max' below 'k_min'");
    }
    if (b.contains("levels")) {
        const json& l = b.at("levels");
        if (!l.is_object()) throw ConfigError("'levels' must be {min, max}");
        const int lo = int_of(l, "min", 0, kMaxDyadicLevel);
        if (int_of(l, "max", 0, kMaxDyadicLevel) < lo) throw ConfigError("'levels.max' below 'levels.min'");
    }
    if (b.contains("boundary_level")) int_of(b, "boundary_level", 2, cmd == "degree-check" ? 22 : kMaxSegmentLevel);
    if (b.contains("grid_level")) int_of(b, "grid_level", 1, 12);
    if (b.contains("sew_level")) int_of(b, "sew_level", 0, kMaxDyadicLevel);
    if (b.contains("max_refine")) int_of(b, "max_refine", 0, 10);
    for (const char* k : {"tolerance", "excluded_tolerance"})
        if (b.contains(k)) positive_of(b, k);
    if (b.contains("samples")) int_of(b, "samples", 1, 10'000'000);
    if (b.contains("audit_seed") && !(b.at("audit_seed").is_number_integer() && b.at("audit_seed").get<long long>() >= 0))
        throw ConfigError("'audit_seed' must be a non-negative integer");
}

json triple_constants(const FormTriple& t) {
    const GermBounds gb = strat_bounds(t);
    return {{"alpha", t.alpha()},
            {"beta1", t.beta1()},
            {"beta2", t.beta2()},
            {"f_seminorm", t.f.seminorm_bound()},
            {"g1_seminorm", t.g1.seminorm_bound()},
            {"g2_seminorm", t.g2.seminorm_bound()},
            {"f_sup", t.f.sup_bound()},
            {"gamma1", gb.gamma1},
            {"C1", gb.C1},
            {"gamma2", gb.gamma2},
            {"C2", gb.C2},
            {"exponent_sum", t.exponent_sum()},
            {"certified_regime", t.certified_regime()}};
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json result_json(const IntegralResult& r) {
    return {{"value", r.value},
            {"scheme", to_string(r.scheme)},
            {"level", r.level},
            {"error_bound", finite_or_null(r.error_bound)},
            {"ito_strat_gap", r.ito_strat_gap},
            {"certified", r.certified},
            {"strat_value", r.strat_value},
            {"ito_value", r.ito_value}};
}

void summary_row(Report& rep) {
    for (const auto& [k, v] : rep.summary.items()) rep.columns.push_back(k);
    std::vector<json> row;
    for (const auto& [k, v] : rep.summary.items()) row.push_back(v);
    rep.rows.push_back(std::move(row));
}

IntegrateOptions warn_options() {
    IntegrateOptions o;
    o.mode = CertMode::Warn;
    return o;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0, bool timing) {
    if (!timing) return 0.0;
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Report cmd_integrate_simplex(const json& b) {
    const FormTriple t = triple_of(b);
    const IntegralResult r =
        integrate_simplex(t, simplex_of(b), scheme_from_string(b.at("scheme")), b.at("level"), warn_options());
    Report rep;
    rep.header = triple_constants(t);
    rep.summary = result_json(r);
    rep.ok = r.certified;
    summary_row(rep);
    return rep;
}

Report cmd_integrate_polygon(const json& b) {
    const FormTriple t = triple_of(b);
    const Polygon poly = polygon_of(b);
    const Scheme scheme = scheme_from_string(b.at("scheme"));
    const int level = b.at("level");
    IntegralResult r;
    if (b.at("triangulation") == "fan")
        r = integrate_polygon(t, poly, point_of(b.at("apex"), "apex"), scheme, level, warn_options());
    else
        r = integrate_triangles(t, ear_clipping(poly), scheme, level, warn_options());
    Report rep;
    rep.header = triple_constants(t);
    rep.header["signed_area"] = signed_area(poly);
    rep.summary = result_json(r);
    rep.ok = r.certified;
    summary_row(rep);
    return rep;
}

Report cmd_integrate_domain(const json& b) {
    const FormTriple t = triple_of(b);
    const DyadicDomain dom = domain_from_json(b.at("domain"));
    const DomainIntegralResult r = integrate_domain(t, dom, b.at("k_min"), b.at("k_max"),
                                                    scheme_from_string(b.at("scheme")), b.at("level"), warn_options());
    Report rep;
    rep.header = triple_constants(t);
    rep.header["boundary_dim_estimate"] = dom.boundary_dim_estimate;
    rep.header["dimension_condition"] = r.dimension_condition;
    rep.columns = {"k", "squares", "value", "strat_value", "ito_value", "difference", "quadrature_bound"};
    for (const auto& lv : r.trace)
        rep.rows.push_back({lv.k, lv.squares, lv.value, lv.strat_value, lv.ito_value, lv.difference,
                            finite_or_null(lv.quadrature_bound)});
    rep.summary = result_json(r.result);
    rep.summary["tail_estimate"] = finite_or_null(r.tail_estimate);
    rep.ok = r.result.certified;
    return rep;
}

Report cmd_convergence_table(const json& b, bool timing) {
    const FormTriple t = triple_of(b);
    const Simplex2 s = simplex_of(b);
    const SimplexIntegrand in = simplex_integrand(t);
    const Germ2 w = strat_germ(t);
    const auto sd = sides(s);
    Report rep;
    rep.header = triple_constants(t);
    rep.columns = {"n", "strat_sum", "ito_sum", "ito_strat_gap", "side_corrector_norm", "error_bound", "wall_time_ms"};
    const int lo = b.at("levels").at("min"), hi = b.at("levels").at("max");
    for (int n = lo; n <= hi; ++n) {
        const auto t0 = Clock::now();
        const LatticeSums sums = simplex_sums(*in.nodes, s, n);
        double side = 0.0;
        for (const auto& seg : sd) side = std::max(side, std::abs(side_corrector(w, seg, n)));
        const double bound = scheme_error_bound(in, s, Scheme::Strat, n);
        const double ms = elapsed_ms(t0, timing);
        rep.rows.push_back({n, sums.strat, sums.ito, std::abs(sums.strat - sums.ito), side, finite_or_null(bound), ms});
    }
    rep.summary = {{"certified", in.certified}};
    rep.ok = in.certified;
    return rep;
}

Report cmd_stokes(const json& b) {
    FormTriple t = triple_of(b);
    t.f = ScalarField::constant(1.0, box_of(b));
    const Simplex2 s = simplex_of(b);
    const IntegralResult r = integrate_simplex(t, s, Scheme::Strat, b.at("level"), warn_options());
    const double line = boundary_young_integral(t.g1, t.g2, s, b.at("boundary_level"));
    const double tol = b.at("tolerance");
    Report rep;
    rep.header = triple_constants(t);
    rep.header["tolerance"] = tol;
    const double gap = std::abs(r.value - line);
    rep.summary = {{"surface", r.value},
                   {"boundary", line},
                   {"gap", gap},
                   {"tolerance", tol},
                   {"error_bound", finite_or_null(r.error_bound)},
                   {"status", gap <= tol ? "pass" : "fail"}};
    rep.ok = gap <= tol;
    summary_row(rep);
    return rep;
}

Report cmd_chain_rule(const json& b) {
    const ComposedIntegrand c = composed_from_json(b.at("integrand"));
    const SmoothMap2 psi = smooth_map_from_json(b.at("map"));
    const auto [h1, h2] = h_of(b);
    const ChainRuleResult r = chain_rule_residual(c, psi, h1, h2, simplex_of(b), b.at("level"), warn_options());
    Report rep;
    const ExponentCertificate e = exponent_certificate(times_jacobian(c, psi), h1, h2);
    rep.header = {{"beta1", e.beta1}, {"beta2", e.beta2}, {"gamma", e.gamma}, {"d", e.d}, {"c11_only", c.c11_only}};
    rep.summary = {{"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"residual", r.residual},
                   {"tolerance", finite_or_null(r.tolerance)},
                   {"certified", r.certified},
                   {"status", r.residual <= r.tolerance ? "pass" : "fail"}};
    rep.ok = r.certified && r.residual <= r.tolerance;
    summary_row(rep);
    return rep;
}

Report cmd_degree(const json& b) {
    const ComposedIntegrand c = composed_from_json(b.at("integrand"));
    const auto [h1, h2] = h_of(b);
    DegreeOptions d;
    d.boundary_level = b.at("boundary_level");
    d.max_refine = b.at("max_refine");
    d.excluded_tolerance = b.at("excluded_tolerance");
    const DegreeCheckResult r =
        degree_identity_check(c, h1, h2, simplex_of(b), b.at("grid_level"), b.at("sew_level"), d, warn_options());
    const double tol = b.at("tolerance");
    Report rep;
    rep.header = {{"tolerance", tol},
                  {"excluded_tolerance", d.excluded_tolerance},
                  {"guard", r.guard},
                  {"c11_only", c.c11_only}};
    rep.summary = {{"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"gap", r.gap},
                   {"rhs_error_bound", finite_or_null(r.rhs_error_bound)},
                   {"excluded_area", r.excluded_area},
                   {"excluded_mass", r.excluded_mass},
                   {"cells", r.cells},
                   {"certified", r.certified},
                   {"status", r.certified && r.gap <= tol ? "pass" : "fail"}};
    rep.ok = r.certified && r.gap <= tol;
    summary_row(rep);
    return rep;
}

Report cmd_vanishing(const json& b) {
    const FormTriple t = triple_of(b);
    const VanishingResult r = vanishing_form_check(t, simplex_of(b), b.at("level"), warn_options());
    Report rep;
    rep.header = triple_constants(t);
    rep.summary = {{"value", r.value},
                   {"error_bound", finite_or_null(r.error_bound)},
                   {"naive_germ", r.naive_germ},
                   {"certified", r.certified}};
    rep.ok = r.certified && r.value <= r.error_bound;
    summary_row(rep);
    return rep;
}

Point2 random_point_near(std::mt19937_64& rng, const Box& box, Point2 c, double r) {
    const double x = c.x1 + r * (2.0 * unit_uniform(rng()) - 1.0);
    const double y = c.x2 + r * (2.0 * unit_uniform(rng()) - 1.0);
    return {std::clamp(x, box.x0, box.x1), std::clamp(y, box.y0, box.y1)};
}

} // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (!j.contains("command") || !j.at("command").is_string()) throw ConfigError("config needs a string 'command'");
    ExperimentConfig c;
    c.command = j.at("command").get<std::string>();
    json body = default_body(c.command);
    for (const auto& [k, v] : j.items()) {
        if (k == "command") continue;
        if (k == "certified") {
            c.mode = cert_mode_from_string(v.get<std::string>());
        } else if (k == "format") {
            c.format = output_format_from_string(v.get<std::string>());
        } else if (k == "seed") {
            if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("'seed' must be a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (k == "threads") {
            if (!v.is_number_integer() || v.get<int>() < 0) throw ConfigError("'threads' must be a non-negative integer");
            c.threads = v.get<int>();
        } else if (k == "timing") {
            if (!v.is_boolean()) throw ConfigError("'timing' must be a boolean");
            c.timing = v.get<bool>();
        } else {
            body[k] = v;
        }
    }
    if (c.seed) {
        for (const char* group : {"fields", "h"})
            if (body.contains(group) && body[group].is_object())
                for (auto& [k, spec] : body[group].items()) inject_seed(spec, *c.seed);
        if (body.contains("domain") && body["domain"].is_object() &&
            body["domain"].value("name", std::string()) == "weierstrass_hypograph" && !body["domain"].contains("seed"))
            body["domain"]["seed"] = *c.seed;
    }
    try {
        validate(c.command, body);
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    c.body = std::move(body);
    return c;
}

json to_json(const ExperimentConfig& c) {
    json j = c.body;
    j["command"] = c.command;
    j["certified"] = to_string(c.mode);
    j["format"] = to_string(c.format);
    if (c.seed) j["seed"] = *c.seed;
    j["threads"] = c.threads;
    j["timing"] = c.timing;
    return j;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.command == b.command && a.body == b.body && a.mode == b.mode && a.format == b.format &&
           a.seed == b.seed && a.threads == b.threads && a.timing == b.timing;
}

std::string render(const Report& r, const ExperimentConfig& c) {
    if (c.format == OutputFormat::Json) {
        json j = {{"command", c.command},
                  {"config", to_json(c)},
                  {"constants", r.header},
                  {"columns", r.columns},
                  {"rows", r.rows},
                  {"summary", r.summary},
                  {"ok", r.ok}};
        return j.dump(2) + "\n";
    }
    auto cell = [](const json& v) -> std::string {
        if (v.is_null()) return "inf";
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    std::ostringstream os;
    os << "# command: " << c.command << "\n";
    os << "# config: " << to_json(c).dump() << "\n";
    for (const auto& [k, v] : r.header.items()) os << "# " << k << ": " << cell(v) << "\n";
    for (const auto& [k, v] : r.summary.items()) os << "# summary." << k << ": " << cell(v) << "\n";
    os << "# ok: " << (r.ok ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
    os << "\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
        os << "\n";
    }
    return os.str();
}

Report bounds_audit(const json& b);

RunResult run(const ExperimentConfig& c) {
    if (c.threads > 0) set_max_threads(c.threads);
    const json& b = c.body;
    Report rep;
    if (c.command == "integrate-simplex") rep = cmd_integrate_simplex(b);
    else if (c.command == "integrate-polygon") rep = cmd_integrate_polygon(b);
    else if (c.command == "integrate-domain") rep = cmd_integrate_domain(b);
    else if (c.command == "convergence-table") rep = cmd_convergence_table(b, c.timing);
    else if (c.command == "stokes-check") rep = cmd_stokes(b);
    else if (c.command == "chain-rule-check") rep = cmd_chain_rule(b);
    else if (c.command == "degree-check") rep = cmd_degree(b);
    else if (c.command == "vanishing-check") rep = cmd_vanishing(b);
    else if (c.command == "bounds-audit") rep = bounds_audit(b);
    else throw ConfigError("unknown command '" + c.command + "'");
    RunResult out;
    out.output = render(rep, c);
    out.exit_code = (!rep.ok && c.mode == CertMode::Strict) ? 2 : 0;
    out.report = std::move(rep);
    return out;
}

Report bounds_audit(const json& b) {
    const FormTriple t = triple_of(b);
    const Box box = box_of(b);
    const int samples = b.at("samples");
    std::mt19937_64 rng(b.at("audit_seed").get<std::uint64_t>());
    std::optional<ComposedIntegrand> comp;
    if (!b.at("integrand").is_null()) comp = composed_from_json(b.at("integrand"));
    long long v_gap = 0, v_mag = 0, v_delta = 0, v_comp = 0;
    double r_gap = 0, r_mag = 0, r_delta = 0, r_comp = 0;
    auto ratio = [](const BoundCheck& c) {
        const double b = c.bound + c.slack;
        return b > 0 ? c.value / b : (c.value > 0 ? 1e300 : 0.0);
    };
    for (int k = 0; k < samples; ++k) {
        const Point2 c{box.x0 + box.width() * unit_uniform(rng()), box.y0 + box.height() * unit_uniform(rng())};
        const double r = 0.5 * box.diameter() * std::exp2(-12.0 * unit_uniform(rng()));
        Simplex3 q;
        for (auto& v : q.v) v = random_point_near(rng, box, c, r);
        const Simplex2 s{{q.v[0], q.v[1], q.v[2]}};
        const TriangleBoundChecks tc = germ_bound_check(t, s);
        const BoundCheck dc = germ_bound_check(t, q);
        if (!tc.ito_strat_gap.holds()) ++v_gap;
        if (!tc.strat_magnitude.holds()) ++v_mag;
        if (!dc.holds()) ++v_delta;
        r_gap = std::max(r_gap, ratio(tc.ito_strat_gap));
        r_mag = std::max(r_mag, ratio(tc.strat_magnitude));
        r_delta = std::max(r_delta, ratio(dc));
        if (comp) {
            const BoundCheck cc = composed_delta_bound_check(*comp, t.g1, t.g2, q);
            if (!cc.holds()) ++v_comp;
            r_comp = std::max(r_comp, ratio(cc));
        }
    }
    Report rep;
    rep.header = triple_constants(t);
    rep.header["samples"] = samples;
    if (comp) rep.header["c11_only"] = comp->c11_only;
    rep.columns = {"check", "violations", "max_ratio"};
    rep.rows.push_back({"ito_strat_gap", v_gap, r_gap});
    rep.rows.push_back({"strat_magnitude", v_mag, r_mag});
    rep.rows.push_back({"delta_strat", v_delta, r_delta});
    if (comp) rep.rows.push_back({"composed_delta_strat", v_comp, r_comp});
    const long long total = v_gap + v_mag + v_delta + v_comp;
    rep.summary = {{"samples", samples}, {"violations", total}};
    rep.ok = total == 0;
    return rep;
}

} // namespace roughint
