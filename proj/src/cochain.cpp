#include "roughint/cochain.hpp"

namespace roughint {

double antisymmetrize_eval(const ScalarField& g1, const ScalarField& g2, const Simplex2& s) {
    const GermK<1> d1 = coboundary<0>(as_germ0(g1));
    const GermK<1> d2 = coboundary<0>(as_germ0(g2));
    return 0.5 * (cup_eval<1, 1>(d1, d2, s) - cup_eval<1, 1>(d2, d1, s));
}

double half_det_edges(const ScalarField& g1, const ScalarField& g2, const Simplex2& s, int i, int j, int k, int l) {
    const double a1 = g1(s.v[j]) - g1(s.v[i]), b1 = g1(s.v[l]) - g1(s.v[k]);
    const double a2 = g2(s.v[j]) - g2(s.v[i]), b2 = g2(s.v[l]) - g2(s.v[k]);
    return 0.5 * (a1 * b2 - b1 * a2);
}

} // namespace roughint
