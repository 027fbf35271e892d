#pragma once

// Hand-rolled generators for the property tests. Every generator draws from
// an explicit seeded engine so failures reproduce from the printed seed.

#include <cmath>
#include <cstdint>
#include <random>

#include "roughint/fields.hpp"
#include "roughint/geometry.hpp"

namespace gen {

using namespace roughint;

inline constexpr int kCases = 10000;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double a, double b) { return a + (b - a) * unit_uniform(eng_()); }
    int integer(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    std::uint64_t bits() { return eng_(); }
    bool coin() { return (eng_() & 1u) != 0; }

private:
    std::mt19937_64 eng_;
};

/// Point in [0,1]^2 with occasional exact dyadic coordinates.
inline Point2 point(Rng& r) {
    if (r.integer(0, 3) == 0) return {r.integer(0, 1024) / 1024.0, r.integer(0, 1024) / 1024.0};
    return {r.uniform(0.0, 1.0), r.uniform(0.0, 1.0)};
}

/// Point on the grid 2^-10 Z^2 inside [0,1]^2; sums and midpoints of such
/// points stay exact.
inline Point2 dyadic_point(Rng& r) { return {r.integer(0, 1024) / 1024.0, r.integer(0, 1024) / 1024.0}; }

/// Simplex with vertices near a random center at a log-uniform scale in
/// [2^-12, 1], clipped to [0,1]^2.
template <int K>
Simplex<K> simplex(Rng& r) {
    const Point2 c = point(r);
    const double s = std::exp2(-12.0 * r.uniform(0.0, 1.0));
    Simplex<K> out;
    for (auto& v : out.v)
        v = {std::clamp(c.x1 + s * r.uniform(-1.0, 1.0), 0.0, 1.0), std::clamp(c.x2 + s * r.uniform(-1.0, 1.0), 0.0, 1.0)};
    return out;
}

template <int K>
Simplex<K> dyadic_simplex(Rng& r) {
    Simplex<K> out;
    for (auto& v : out.v) v = dyadic_point(r);
    return out;
}

/// Random collinear triangle: third vertex on the line through the first two.
inline Simplex2 collinear_triangle(Rng& r) {
    const Point2 p = point(r), q = point(r);
    const double t = r.uniform(-0.5, 1.5);
    return Simplex2{{p, q, p + t * (q - p)}};
}

/// Random smooth field: an affine map, a quadratic polynomial or a trig
/// wave with random coefficients.
inline ScalarField smooth_field(Rng& r) {
    switch (r.integer(0, 2)) {
    case 0:
        return field_from_spec({FieldKind::Affine, {{"c", r.uniform(-1, 1)}, {"a", {r.uniform(-2, 2), r.uniform(-2, 2)}}}});
    case 1: {
        nlohmann::json terms = nlohmann::json::array();
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; i + j <= 2; ++j) terms.push_back({r.uniform(-1, 1), i, j});
        return field_from_spec({FieldKind::Polynomial, {{"terms", terms}}});
    }
    default:
        return field_from_spec({FieldKind::Trig,
                                {{"fn", r.coin() ? "sin" : "cos"},
                                 {"freq", {r.uniform(-3, 3), r.uniform(-3, 3)}},
                                 {"phase", r.uniform(0, 6.28)},
                                 {"amp", r.uniform(0.2, 2)}}});
    }
}

/// Weierstrass field with random exponent in [0.55, 0.95] and a small depth.
inline ScalarField rough_field(Rng& r) {
    return make_weierstrass(r.uniform(0.55, 0.95), 2, r.integer(4, 10), r.bits() % 100000);
}

inline ScalarField any_field(Rng& r) { return r.coin() ? smooth_field(r) : rough_field(r); }

} // namespace gen
