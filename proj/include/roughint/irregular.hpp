#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughint/integrator.hpp"

namespace roughint {

/// Bounds of a composed integrand over x in xbox, y in ybox.
struct ComposedBounds {
    double sup_F = 0.0;
    double sup_grad = 0.0;       ///< sup |grad_y F|
    double grad_seminorm = 0.0;  ///< gamma-Hoelder seminorm of grad_y F in y, uniform in x
    double x_seminorm = 0.0;     ///< alpha-Hoelder seminorm of F in x, uniform in y
};

/// F(x, y), integrated as F(x, g(x)) dg1 ^ dg2.
struct ComposedIntegrand {
    std::string name;
    std::function<double(Point2 x, Point2 y)> F;
    std::function<std::array<double, 2>(Point2 x, Point2 y)> grad_y;
    double alpha = 1.0;
    double gamma = 1.0;
    /// Only C^{1,1} regularity is known (accepted, flagged in reports).
    bool c11_only = false;
    std::function<ComposedBounds(const Box& xbox, const Box& ybox)> bounds;
    nlohmann::json params = nlohmann::json::object();
};

/// Built-ins: "one", "y1", "y2", "y1y2", "x1", "gauss" {scale},
/// "bump" {center, radius}.
ComposedIntegrand composed_integrand(const std::string& name);
ComposedIntegrand composed_from_json(const nlohmann::json& j);
std::vector<std::string> composed_integrand_names();

/// F depends only on y: F(x, y) = phi(y).
ComposedIntegrand composed_from_phi(std::string name, std::function<double(Point2)> phi,
                                    std::function<std::array<double, 2>(Point2)> grad, double gamma,
                                    std::function<ComposedBounds(const Box& ybox)> bounds);

struct GradientAudit {
    double max_error = 0.0;  ///< max |fd - grad| / max(1, |grad|)
    int samples = 0;
    bool passed = false;
};

/// Central differences against grad_y at random (x, y) in xbox x ybox.
GradientAudit audit_gradient(const ComposedIntegrand& c, const Box& xbox, const Box& ybox, int samples,
                             std::uint64_t seed = 1, double tol = 1e-5);

/// Box holding the values of (g1, g2) on their working box.
Box value_box(const ScalarField& g1, const ScalarField& g2);

struct ExponentCertificate {
    double alpha = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double gamma = 0.0;
    bool cond1 = false;               ///< alpha + beta1 + beta2 > 2
    std::array<bool, 2> cond2{};      ///< (1+gamma) beta_i + beta1 + beta2 > 2
    /// min(alpha, (1+gamma) min(beta1, beta2)) + beta1 + beta2
    double d = 0.0;

    bool certified() const { return cond1 && cond2[0] && cond2[1]; }
};

ExponentCertificate exponent_certificate(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2);

/// x -> F(x, g(x)) as a plain field with exponent min(alpha, beta1, beta2).
ScalarField compose_integrand(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2);

/// The form F(x, g) dg1 ^ dg2 seen as a plain triple; its certificate is
/// the one the plain simplex integrator would use.
FormTriple plain_triple(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2);

/// Sewing constants for the composed strat germ on subsimplices of a
/// simplex with diameter dmax: C1 = sup|F| [g1][g2] with exponent
/// beta1 + beta2 and C2 diam^d bounding |d strat|.
SewingParams composed_sewing_params(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2,
                                    double dmax);

/// |d strat| on a 3-simplex against C2(diam q) diam(q)^d.
BoundCheck composed_delta_bound_check(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2,
                                      const Simplex3& q);

std::shared_ptr<const NodeEvaluator> composed_node_evaluator(const ComposedIntegrand& c, const ScalarField& g1,
                                                             const ScalarField& g2);

/// Strat sums of F(x, g) dg1 ^ dg2 over dya^level(s). Refuses
/// beta1 + beta2 <= 1.
IntegralResult integrate_composed(const ComposedIntegrand& c, const ScalarField& g1, const ScalarField& g2,
                                  const Simplex2& s, int level, const IntegrateOptions& opt = {});

struct SmoothMapBounds {
    std::array<double, 2> sup_value{};
    std::array<double, 2> sup_grad{};  ///< sup |grad psi_i|
    double sup_det = 0.0;
    double sup_grad_det = 0.0;
    double lip_grad_det = 0.0;
};

struct SmoothMap2 {
    std::string name;
    std::function<Point2(Point2)> map;
    /// {d1 psi1, d2 psi1, d1 psi2, d2 psi2}
    std::function<std::array<double, 4>(Point2)> jacobian;
    std::function<std::array<double, 2>(Point2)> grad_det;
    std::function<SmoothMapBounds(const Box& ybox)> bounds;
    nlohmann::json params = nlohmann::json::object();

    double det(Point2 y) const {
        const auto J = jacobian(y);
        return J[0] * J[3] - J[1] * J[2];
    }
};

/// "identity", "square1" (y1^2, y2), "rotation" {theta}, "complex_square".
SmoothMap2 smooth_map(const std::string& name, double theta = 0.0);
SmoothMap2 smooth_map_from_json(const nlohmann::json& j);

/// psi_i o (h1, h2) with bounds from the map's gradient bounds.
ScalarField compose_map(const SmoothMap2& psi, int i, const ScalarField& h1, const ScalarField& h2);

/// F(x, y) det D psi(y).
ComposedIntegrand times_jacobian(const ComposedIntegrand& c, const SmoothMap2& psi);

struct ChainRuleResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    /// Sum of the two error bounds; +inf unless both sides are certified.
    double tolerance = 0.0;
    bool certified = false;
};

/// lhs = integral of F(x, h) d(psi1 o h) ^ d(psi2 o h),
/// rhs = integral of F(x, h) det D psi(h) dh1 ^ dh2.
ChainRuleResult chain_rule_residual(const ComposedIntegrand& c, const SmoothMap2& psi, const ScalarField& h1,
                                    const ScalarField& h2, const Simplex2& s, int level,
                                    const IntegrateOptions& opt = {});

/// Winding number of the image of the closed chain under (g1, g2) around x,
/// from angle increments at 2^level + 1 points per segment. Throws
/// GuardViolation when x is within twice the largest sampling step of the
/// sampled image, GeometryError when the chain is not closed.
int winding_number(const ScalarField& g1, const ScalarField& g2, const Chain<1>& boundary, Point2 x, int level);

struct DegreeOptions {
    /// 2^boundary_level samples per side of the image curve.
    int boundary_level = 16;
    /// Extra quadtree levels below grid_level near the curve.
    int max_refine = 6;
    /// Largest excluded |phi| mass before the check is flagged.
    double excluded_tolerance = 1e-3;
};

struct DegreeCheckResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double rhs_error_bound = 0.0;
    double excluded_area = 0.0;
    double excluded_mass = 0.0;
    double guard = 0.0;
    long long cells = 0;
    bool certified = false;
};

/// lhs = midpoint sum of phi(y) deg(h, s, y) over a grid on the image's
/// bounding box; rhs = integral of phi(h) dh1 ^ dh2 over s.
DegreeCheckResult degree_identity_check(const ComposedIntegrand& phi, const ScalarField& h1, const ScalarField& h2,
                                        const Simplex2& s, int grid_level, int sew_level,
                                        const DegreeOptions& dopt = {}, const IntegrateOptions& opt = {});

enum class CurrentComponent { Dx1Dx2, Dx1Dy2, Dx2Dy1, Dy1Dy2 };
std::string to_string(CurrentComponent c);
CurrentComponent current_component_from_string(const std::string& s);

struct CurrentResult {
    double value = 0.0;
    double error_bound = 0.0;
    /// 3 beta1 + beta2 > 2 and 3 beta2 + beta1 > 2, and the component's
    /// own integral certified.
    bool certified = false;
};

/// One component of the graph current of g applied to F(x, y) dx/dy.
CurrentResult current_eval(const ScalarField& g1, const ScalarField& g2, CurrentComponent comp,
                           const ComposedIntegrand& F, const Simplex2& s, int level,
                           const IntegrateOptions& opt = {});

struct VanishingResult {
    double value = 0.0;       ///< |strat integral| at the level
    double error_bound = 0.0;
    double naive_germ = 0.0;  ///< |strat germ on s|
    bool certified = false;
};

/// For g_i = phi_i o h with a single rough h the integral is 0.
VanishingResult vanishing_form_check(const FormTriple& t, const Simplex2& s, int level,
                                     const IntegrateOptions& opt = {});

} // namespace roughint
