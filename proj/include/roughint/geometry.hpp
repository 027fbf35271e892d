#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "roughint/errors.hpp"

namespace roughint {

struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }

inline Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x1 + b.x1), 0.5 * (a.x2 + b.x2)}; }
inline double norm(Point2 a) { return std::hypot(a.x1, a.x2); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline double cross(Point2 a, Point2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline bool is_finite(Point2 a) { return std::isfinite(a.x1) && std::isfinite(a.x2); }

/// Oriented K-simplex; the orientation is the vertex order and is never
/// normalized.
template <int K>
struct Simplex {
    static_assert(K >= 0 && K <= 3, "simplices of rank 0..3 only");
    static constexpr int rank = K;
    std::array<Point2, K + 1> v{};

    const Point2& operator[](std::size_t i) const { return v[i]; }
    Point2& operator[](std::size_t i) { return v[i]; }

    friend bool operator==(const Simplex&, const Simplex&) = default;
};

using Simplex0 = Simplex<0>;
using Simplex1 = Simplex<1>;
using Simplex2 = Simplex<2>;
using Simplex3 = Simplex<3>;

/// Simplex with the i-th vertex removed.
template <int K>
Simplex<K - 1> face(const Simplex<K>& s, int i) {
    Simplex<K - 1> out;
    int j = 0;
    for (int k = 0; k <= K; ++k)
        if (k != i) out.v[j++] = s.v[k];
    return out;
}

/// Formal real combination of K-simplices.
template <int K>
struct Chain {
    std::vector<std::pair<double, Simplex<K>>> terms;

    void add(double c, const Simplex<K>& s) { terms.emplace_back(c, s); }
    void append(const Chain& other, double scale = 1.0) {
        for (const auto& [c, s] : other.terms) terms.emplace_back(scale * c, s);
    }
    bool empty() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }

    /// Merge terms whose vertex lists are bitwise identical and drop zero
    /// coefficients. Orientation is respected: [pq] and [qp] stay distinct.
    Chain canonical() const;
};

template <int K>
Chain<K> Chain<K>::canonical() const {
    Chain out;
    for (const auto& [c, s] : terms) {
        bool merged = false;
        for (auto& t : out.terms) {
            if (t.second == s) {
                t.first += c;
                merged = true;
                break;
            }
        }
        if (!merged) out.terms.emplace_back(c, s);
    }
    std::erase_if(out.terms, [](const auto& t) { return t.first == 0.0; });
    return out;
}

template <int K>
Chain<K - 1> boundary(const Simplex<K>& s) {
    static_assert(K >= 1, "boundary of a point is undefined");
    Chain<K - 1> out;
    for (int i = 0; i <= K; ++i) out.add((i % 2 == 0) ? 1.0 : -1.0, face(s, i));
    return out;
}

template <int K>
Chain<K - 1> boundary(const Chain<K>& c) {
    Chain<K - 1> out;
    for (const auto& [coef, s] : c.terms) out.append(boundary(s), coef);
    return out;
}

/// Vertex list of runtime rank; used where ranks come from data (JSON, CLI).
struct SimplexN {
    std::vector<Point2> vertices;
    int rank() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Faces of a runtime-rank simplex with alternating signs. Throws
/// InvalidRank for points and empty vertex lists.
std::vector<std::pair<double, SimplexN>> boundary(const SimplexN& s);

struct GeomMeasures {
    double diam = 0.0;
    double area2 = 0.0;
};

template <int K>
double diam(const Simplex<K>& s) {
    double d = 0.0;
    for (int i = 0; i <= K; ++i)
        for (int j = i + 1; j <= K; ++j) d = std::max(d, distance(s.v[i], s.v[j]));
    return d;
}

inline double signed_area(const Simplex2& s) {
    return 0.5 * cross(s.v[1] - s.v[0], s.v[2] - s.v[0]);
}

inline GeomMeasures measures(const Simplex2& s) { return {diam(s), signed_area(s)}; }

/// [q0 q1 q2] + [q1 q0 p2] + [q2 p1 q0] + [p0 q2 q1], q_i the midpoint of the
/// edge opposite p_i.
inline std::array<Simplex2, 4> dya_children(const Simplex2& s) {
    const Point2 p0 = s.v[0], p1 = s.v[1], p2 = s.v[2];
    const Point2 q0 = midpoint(p1, p2), q1 = midpoint(p0, p2), q2 = midpoint(p0, p1);
    return {Simplex2{{q0, q1, q2}}, Simplex2{{q1, q0, p2}}, Simplex2{{q2, p1, q0}},
            Simplex2{{p0, q2, q1}}};
}

Chain<2> dya(const Simplex2& s);
Chain<2> dya(const Chain<2>& c);

/// n-fold dya, materialized. Only for small n; summation paths stream.
Chain<2> dya_power(const Simplex2& s, int n);

Chain<1> cut(const Simplex1& s);
Chain<1> cut(const Chain<1>& c);
Chain<1> cut_power(const Simplex1& s, int n);

inline Simplex2 fill(const Simplex1& s) { return Simplex2{{s.v[0], midpoint(s.v[0], s.v[1]), s.v[1]}}; }
Chain<2> fill(const Chain<1>& c);

/// Odd/even permutation helpers used by alternation checks.
inline Simplex2 permute(const Simplex2& s, int a, int b, int c) { return Simplex2{{s.v[a], s.v[b], s.v[c]}}; }
inline Simplex1 reversed(const Simplex1& s) { return Simplex1{{s.v[1], s.v[0]}}; }

/// Point at parameter t of a segment, computed as start + t*(end-start).
inline Point2 lerp(const Simplex1& s, double t) { return s.v[0] + t * (s.v[1] - s.v[0]); }

struct Box {
    double x0 = -1.0, y0 = -1.0, x1 = 2.0, y1 = 2.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double diameter() const { return std::hypot(width(), height()); }
    bool contains(Point2 p) const { return p.x1 >= x0 && p.x1 <= x1 && p.x2 >= y0 && p.x2 <= y1; }
    friend bool operator==(const Box&, const Box&) = default;
};

/// Default working box for certified field bounds.
inline constexpr Box kWorkingBox{-1.0, -1.0, 2.0, 2.0};

} // namespace roughint
