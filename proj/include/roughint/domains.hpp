#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughint/integrator.hpp"

namespace roughint {

struct DyadicDomain {
    std::string name;
    std::function<bool(Point2)> inside;
    /// True only if the closed square is inside the closure of the domain
    /// (so the open square lies in the open domain). Must be conservative.
    std::function<bool(const Box&)> contains_square;
    Box bbox;
    double boundary_dim_estimate = 1.0;
    nlohmann::json params = nlohmann::json::object();
};

DyadicDomain make_disk(Point2 center, double radius);
DyadicDomain make_square(Point2 lower_left, double side);

struct HypographOptions {
    WeierstrassOptions graph;  ///< direction is forced to 0 (a function of x1)
    double x0 = 0.0;
    double x1 = 1.0;
    double floor = -1.0;
    double offset = 0.0;
};

/// {(x, y) : x0 < x < x1, floor < y < offset + W(x)} for a Weierstrass sum W.
DyadicDomain make_weierstrass_hypograph(const HypographOptions& opt);

/// {"name": "disk"|"square"|"weierstrass_hypograph", ...parameters}
DyadicDomain domain_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DyadicDomain& d);

/// Least-squares slope of log2 N(2^-k) against k for k in [k_min, k_max],
/// N counting grid squares that contain both inside and outside nodes of
/// the grid 2^-(k_max+2) Z^2.
double box_dimension(const DyadicDomain& dom, int k_min, int k_max);
/// The counts N(2^-k) for k_min..k_max.
std::vector<long long> box_counts(const DyadicDomain& dom, int k_min, int k_max);

struct DomainLevel {
    int k = 0;
    long long squares = 0;
    double value = 0.0;
    double strat_value = 0.0;
    double ito_value = 0.0;
    /// |P_k - P_(k-1)|; 0 for the first level.
    double difference = 0.0;
    /// Sum of the triangle error bounds at this k.
    double quadrature_bound = 0.0;
};

struct DomainIntegralResult {
    IntegralResult result;
    std::vector<DomainLevel> trace;
    /// |last difference| r/(1-r) with r = 2^(d - beta1 - beta2): the
    /// geometric tail implied by the convergence rate, not a certified bound.
    double tail_estimate = 0.0;
    bool dimension_condition = false;
};

/// P_k = union of the open grid squares of side 2^-k inside the domain, each
/// split along its main diagonal into two counter-clockwise triangles;
/// integrates over P_k for k = k_min..k_max.
DomainIntegralResult integrate_domain(const FormTriple& t, const DyadicDomain& dom, int k_min, int k_max,
                                      Scheme scheme, int level, const IntegrateOptions& opt = {});

} // namespace roughint
