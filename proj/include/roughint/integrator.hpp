#pragma once

#include <string>
#include <vector>

#include "roughint/germs.hpp"
#include "roughint/sewing.hpp"

namespace roughint {

enum class Scheme { Strat, Ito };
enum class CertMode { Strict, Warn };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);
std::string to_string(CertMode m);
CertMode cert_mode_from_string(const std::string& s);

struct IntegralResult {
    double value = 0.0;
    Scheme scheme = Scheme::Strat;
    int level = 0;
    /// Constructive bound on |value - integral|; +inf when not certified.
    double error_bound = 0.0;
    double ito_strat_gap = 0.0;
    bool certified = false;
    double strat_value = 0.0;
    double ito_value = 0.0;
};

struct IntegrateOptions {
    CertMode mode = CertMode::Warn;
    SummationOptions summation;
};

/// Everything the simplex integrator needs besides the simplex: node
/// values, the strat sewing constants and the ito gap constant
/// 2 [f][g1][g2] with exponent gamma2.
struct SimplexIntegrand {
    std::shared_ptr<const NodeEvaluator> nodes;
    SewingParams strat;
    double ito_gap_C = 0.0;
    bool certified = false;
    std::string why_not_certified;
};

SimplexIntegrand simplex_integrand(const FormTriple& t);

/// Sum of strat and ito over dya^level(s); strat in canonical vertex order.
LatticeSums simplex_sums(const NodeEvaluator& nodes, const Simplex2& s, int level, const SummationOptions& opt = {});

/// Sewing tail for strat plus the accumulated ito/strat gap bound
/// 4^n * 2[f][g1][g2] (diam/2^n)^gamma2 for the ito scheme.
double scheme_error_bound(const SimplexIntegrand& in, const Simplex2& s, Scheme scheme, int level);

IntegralResult integrate_simplex(const SimplexIntegrand& in, const Simplex2& s, Scheme scheme, int level,
                                 const IntegrateOptions& opt = {});
IntegralResult integrate_simplex(const FormTriple& t, const Simplex2& s, Scheme scheme, int level,
                                 const IntegrateOptions& opt = {});

struct Partition {
    std::vector<Simplex2> simplices;
    /// Degenerate simplices on the sides of the parent.
    std::vector<Simplex2> side_fillers;
};

/// dya^n(s) with the matching side fillers fill cut^i for i < n.
Partition dyadic_partition(const Simplex2& s, int n);

/// Throws GeometryError unless the boundary of s minus the boundaries of
/// the cells and of the side fillers cancels, cells are non-degenerate and
/// consistently oriented, and their areas add up to the area of s.
void validate_partition(const Simplex2& s, const Partition& part);

struct PartitionResult {
    double value = 0.0;
    double bound = 0.0;
};

/// Sum of strat over the cells (one germ evaluation per cell) and the bound
/// 4 C2/(1-2^(2-g2)) sum diam^g2 + C1/(1-2^(1-g1)) sum diam(Q)^g1.
PartitionResult integrate_partition(const FormTriple& t, const Simplex2& s, const Partition& part);

struct Polygon {
    std::vector<Point2> vertices;
};

double signed_area(const Polygon& poly);
/// Throws GeometryError for fewer than 3 vertices or properly crossing
/// non-adjacent edges. Collinear (zero-area) polygons are accepted.
void validate_polygon(const Polygon& poly);
/// Sum over fan triangles [a_j a_{j+1} apex].
IntegralResult integrate_polygon(const FormTriple& t, const Polygon& poly, Point2 apex, Scheme scheme, int level,
                                 const IntegrateOptions& opt = {});
/// Ear clipping; triangles keep the polygon's orientation.
std::vector<Simplex2> ear_clipping(const Polygon& poly);
IntegralResult integrate_triangles(const FormTriple& t, const std::vector<Simplex2>& tris, Scheme scheme, int level,
                                   const IntegrateOptions& opt = {});

} // namespace roughint
