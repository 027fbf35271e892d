#include "roughint/geometry.hpp"

namespace roughint {

std::vector<std::pair<double, SimplexN>> boundary(const SimplexN& s) {
    const int k = s.rank();
    if (k < 1) throw InvalidRank("boundary requires a simplex of rank >= 1");
    std::vector<std::pair<double, SimplexN>> out;
    out.reserve(s.vertices.size());
    for (int i = 0; i <= k; ++i) {
        SimplexN f;
        for (int j = 0; j <= k; ++j)
            if (j != i) f.vertices.push_back(s.vertices[j]);
        out.emplace_back((i % 2 == 0) ? 1.0 : -1.0, std::move(f));
    }
    return out;
}

Chain<2> dya(const Simplex2& s) {
    Chain<2> out;
    for (const auto& c : dya_children(s)) out.add(1.0, c);
    return out;
}

Chain<2> dya(const Chain<2>& c) {
    Chain<2> out;
    out.terms.reserve(4 * c.size());
    for (const auto& [coef, s] : c.terms)
        for (const auto& ch : dya_children(s)) out.add(coef, ch);
    return out;
}

Chain<2> dya_power(const Simplex2& s, int n) {
    if (n < 0) throw InvalidArgument("dya_power: negative level");
    if (n > 10) throw BudgetExceeded("dya_power: refusing to materialize more than 4^10 children");
    Chain<2> c;
    c.add(1.0, s);
    for (int i = 0; i < n; ++i) c = dya(c);
    return c;
}

Chain<1> cut(const Simplex1& s) {
    const Point2 q = midpoint(s.v[0], s.v[1]);
    Chain<1> out;
    out.add(1.0, Simplex1{{s.v[0], q}});
    out.add(1.0, Simplex1{{q, s.v[1]}});
    return out;
}

Chain<1> cut(const Chain<1>& c) {
    Chain<1> out;
    for (const auto& [coef, s] : c.terms) out.append(cut(s), coef);
    return out;
}

Chain<1> cut_power(const Simplex1& s, int n) {
    if (n < 0) throw InvalidArgument("cut_power: negative level");
    if (n > 24) throw BudgetExceeded("cut_power: refusing to materialize more than 2^24 segments");
    Chain<1> c;
    c.add(1.0, s);
    for (int i = 0; i < n; ++i) c = cut(c);
    return c;
}

Chain<2> fill(const Chain<1>& c) {
    Chain<2> out;
    for (const auto& [coef, s] : c.terms) out.add(coef, fill(s));
    return out;
}

} // namespace roughint
