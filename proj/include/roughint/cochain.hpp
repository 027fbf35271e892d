#pragma once

#include <functional>

#include "roughint/fields.hpp"
#include "roughint/geometry.hpp"

namespace roughint {

/// A K-germ: any real function of oriented K-simplices.
template <int K>
using GermK = std::function<double(const Simplex<K>&)>;

/// The 0-germ p -> f(p) of a scalar field.
inline GermK<0> as_germ0(const ScalarField& f) {
    return [f](const Simplex0& s) { return f(s.v[0]); };
}

/// sum_i (-1)^i g(face_i s)
template <int K>
double coboundary_eval(const GermK<K>& g, const Simplex<K + 1>& s) {
    double acc = 0.0;
    for (int i = 0; i <= K + 1; ++i) {
        const double v = g(face(s, i));
        acc += (i % 2 == 0) ? v : -v;
    }
    return acc;
}

template <int K>
GermK<K + 1> coboundary(GermK<K> g) {
    return [g = std::move(g)](const Simplex<K + 1>& s) { return coboundary_eval<K>(g, s); };
}

/// Front K-face and back H-face of a (K+H)-simplex, sharing vertex K.
template <int K, int H>
Simplex<K> front_face(const Simplex<K + H>& s) {
    Simplex<K> out;
    for (int i = 0; i <= K; ++i) out.v[i] = s.v[i];
    return out;
}

template <int K, int H>
Simplex<H> back_face(const Simplex<K + H>& s) {
    Simplex<H> out;
    for (int i = 0; i <= H; ++i) out.v[i] = s.v[K + i];
    return out;
}

/// (g cup h)(s) = g(s_0..s_K) * h(s_K..s_{K+H})
template <int K, int H>
double cup_eval(const GermK<K>& g, const GermK<H>& h, const Simplex<K + H>& s) {
    return g(front_face<K, H>(s)) * h(back_face<K, H>(s));
}

template <int K, int H>
GermK<K + H> cup(GermK<K> g, GermK<H> h) {
    return [g = std::move(g), h = std::move(h)](const Simplex<K + H>& s) { return cup_eval<K, H>(g, h, s); };
}

/// 1/2 (dg1 cup dg2 - dg2 cup dg1)(s)
double antisymmetrize_eval(const ScalarField& g1, const ScalarField& g2, const Simplex2& s);

/// 1/2 det [dg1(e) dg1(e'); dg2(e) dg2(e')] for the edges e = [s_i s_j], e' = [s_k s_l].
double half_det_edges(const ScalarField& g1, const ScalarField& g2, const Simplex2& s, int i, int j, int k, int l);

} // namespace roughint
