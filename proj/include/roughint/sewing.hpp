#pragma once

#include <array>
#include <optional>
#include <vector>

#include "roughint/germs.hpp"
#include "roughint/kernels.hpp"

namespace roughint {

/// Levels above this are refused by the summation routines (4^n germs).
inline constexpr int kMaxDyadicLevel = 14;

struct SummationOptions {
    /// Kernel for lattice summation; the detected best one when empty.
    std::optional<kernels::Isa> isa;
    /// Neumaier compensation across strips within a band.
    bool compensated = false;
    /// Strips per parallel task; fixed so results do not depend on threads.
    int band_rows = 32;
};

struct LatticeSums {
    double strat = 0.0;
    double ito = 0.0;
};

/// Sums of the strat and ito germs over the 4^n children of dya^n(s), with
/// each field evaluated once per lattice node. The children of dya^n are
/// the up triangles [(a,b),(a+1,b),(a,b+1)] and down triangles
/// [(a+1,b+1),(a,b+1),(a+1,b)] of the lattice p0 + a h (p1-p0) + b h (p2-p0),
/// h = 2^-n, with exactly these vertex orders.
LatticeSums lattice_sums(const NodeEvaluator& nodes, const Simplex2& s, int n, const SummationOptions& opt = {});

/// <dya^n s, w>. Uses lattice summation for strat and ito germs and the
/// depth-first recursion (fixed reduction tree) otherwise.
double dyadic_sum(const Germ2& w, const Simplex2& s, int n, const SummationOptions& opt = {});
/// Always the recursion: sum = (c0 + c1) + (c2 + c3) over dya children.
double dyadic_sum_recursive(const Germ2& w, const Simplex2& s, int n);

/// S^n_pq = sum_{i<n} <fill cut^i [pq], w>
double side_corrector(const Germ2& w, const Simplex1& seg, int n);

struct SewingParams {
    double gamma1 = 0.0;
    double C1 = 0.0;
    double gamma2 = 0.0;
    double C2 = 0.0;
    int max_level = 12;
    double target_tol = 0.0;

    bool convergent() const { return gamma1 > 1.0 && gamma2 > 2.0; }
};

SewingParams sewing_params(const GermBounds& b, int max_level = 12, double target_tol = 0.0);

/// Faces of s in boundary order: [p1 p2], [p0 p2], [p0 p1].
std::array<Simplex1, 3> sides(const Simplex2& s);

/// Side tail: C1 diam^g1 2^(n(1-g1)) / (1 - 2^(1-g1)).
double side_tail_bound(const SewingParams& p, const Simplex1& seg, int n);
/// Interior tail: 4 C2 diam^g2 2^(n(2-g2)) / (1 - 2^(2-g2)).
double interior_tail_bound(const SewingParams& p, const Simplex2& s, int n);
/// |w^n(s) - V(s)| <= sum of the three side tails + the interior tail;
/// +inf when the exponents do not give convergence.
double sewing_error_bound(const SewingParams& p, const Simplex2& s, int n);

struct SewingLevel {
    int n = 0;
    double omega = 0.0;
    std::array<double, 3> side{};
    double error_bound = 0.0;
};

struct SewingResult {
    double value = 0.0;
    std::array<double, 3> side_corrector{};
    int level_used = 0;
    double error_bound = 0.0;
    bool certified = false;
    std::vector<SewingLevel> level_trace;
};

/// Iterates n = 0, 1, ... until the error bound is below target_tol or
/// max_level is reached. Refuses non-alternating germs.
SewingResult sew(const Germ2& w, const Simplex2& s, const SewingParams& params, const SummationOptions& opt = {});

struct StabilityProbe {
    std::vector<double> gaps;
    /// False when some germ lacks bounds or exceeds the uniform constants.
    bool certified = false;
};

/// |V_k - V| for each germ of the sequence, all sewn with the same params.
StabilityProbe stability_probe(const std::vector<Germ2>& seq, const Germ2& limit, const Simplex2& s,
                               const SewingParams& params, const SummationOptions& opt = {});

} // namespace roughint
