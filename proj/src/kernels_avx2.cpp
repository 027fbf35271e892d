#include "roughint/kernels.hpp"

#include <immintrin.h>

namespace roughint::kernels {

StripSums strip_sums_avx2(RowData lo, RowData up, std::size_t m) {
    __m256d vs = _mm256_setzero_pd();
    __m256d vt = _mm256_setzero_pd();
    const std::size_t pairs = m - 1;
    std::size_t a = 0;
    for (; a + 4 <= pairs; a += 4) {
        const __m256d lg1 = _mm256_loadu_pd(lo.g1 + a), lg1n = _mm256_loadu_pd(lo.g1 + a + 1);
        const __m256d lg2 = _mm256_loadu_pd(lo.g2 + a), lg2n = _mm256_loadu_pd(lo.g2 + a + 1);
        const __m256d ug1 = _mm256_loadu_pd(up.g1 + a), ug1n = _mm256_loadu_pd(up.g1 + a + 1);
        const __m256d ug2 = _mm256_loadu_pd(up.g2 + a), ug2n = _mm256_loadu_pd(up.g2 + a + 1);
        const __m256d lf = _mm256_loadu_pd(lo.f + a), lfn = _mm256_loadu_pd(lo.f + a + 1);
        const __m256d uf = _mm256_loadu_pd(up.f + a), ufn = _mm256_loadu_pd(up.f + a + 1);

        const __m256d du1 = _mm256_sub_pd(lg1n, lg1);
        const __m256d dv1 = _mm256_sub_pd(ug1, lg1);
        const __m256d du2 = _mm256_sub_pd(lg2n, lg2);
        const __m256d dv2 = _mm256_sub_pd(ug2, lg2);
        const __m256d det_up = _mm256_sub_pd(_mm256_mul_pd(du1, dv2), _mm256_mul_pd(dv1, du2));

        const __m256d e1 = _mm256_sub_pd(ug1, ug1n);
        const __m256d k1 = _mm256_sub_pd(lg1n, ug1n);
        const __m256d e2 = _mm256_sub_pd(ug2, ug2n);
        const __m256d k2 = _mm256_sub_pd(lg2n, ug2n);
        const __m256d det_dn = _mm256_sub_pd(_mm256_mul_pd(e1, k2), _mm256_mul_pd(k1, e2));

        const __m256d su = _mm256_mul_pd(_mm256_add_pd(_mm256_add_pd(lf, lfn), uf), det_up);
        const __m256d sd = _mm256_mul_pd(_mm256_add_pd(_mm256_add_pd(ufn, uf), lfn), det_dn);
        const __m256d iu = _mm256_mul_pd(lf, det_up);
        const __m256d id = _mm256_mul_pd(ufn, det_dn);
        vs = _mm256_add_pd(vs, _mm256_add_pd(su, sd));
        vt = _mm256_add_pd(vt, _mm256_add_pd(iu, id));
    }
    alignas(32) double s[4];
    alignas(32) double t[4];
    _mm256_store_pd(s, vs);
    _mm256_store_pd(t, vt);
    for (; a < pairs; ++a) {
        const double du1 = lo.g1[a + 1] - lo.g1[a];
        const double dv1 = up.g1[a] - lo.g1[a];
        const double du2 = lo.g2[a + 1] - lo.g2[a];
        const double dv2 = up.g2[a] - lo.g2[a];
        const double det_up = du1 * dv2 - dv1 * du2;
        const double e1 = up.g1[a] - up.g1[a + 1];
        const double k1 = lo.g1[a + 1] - up.g1[a + 1];
        const double e2 = up.g2[a] - up.g2[a + 1];
        const double k2 = lo.g2[a + 1] - up.g2[a + 1];
        const double det_dn = e1 * k2 - k1 * e2;
        const double su = ((lo.f[a] + lo.f[a + 1]) + up.f[a]) * det_up;
        const double sd = ((up.f[a + 1] + up.f[a]) + lo.f[a + 1]) * det_dn;
        s[a & 3] += su + sd;
        t[a & 3] += lo.f[a] * det_up + up.f[a + 1] * det_dn;
    }
    {
        const std::size_t last = m - 1;
        const double du1 = lo.g1[last + 1] - lo.g1[last];
        const double dv1 = up.g1[last] - lo.g1[last];
        const double du2 = lo.g2[last + 1] - lo.g2[last];
        const double dv2 = up.g2[last] - lo.g2[last];
        const double det_up = du1 * dv2 - dv1 * du2;
        s[last & 3] += ((lo.f[last] + lo.f[last + 1]) + up.f[last]) * det_up;
        t[last & 3] += lo.f[last] * det_up;
    }
    return {(s[0] + s[1]) + (s[2] + s[3]), (t[0] + t[1]) + (t[2] + t[3])};
}

} // namespace roughint::kernels
