#include "roughint/kernels.hpp"

namespace roughint::kernels {

// Lane l accumulates a = l (mod 4). The AVX2 kernel uses the same lanes and
// the same operation order, so both return identical bits.
StripSums strip_sums_scalar(RowData lo, RowData up, std::size_t m) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    double t[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t pairs = m - 1;
    for (std::size_t a = 0; a < pairs; ++a) {
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
        const double iu = lo.f[a] * det_up;
        const double id = up.f[a + 1] * det_dn;
        s[a & 3] += su + sd;
        t[a & 3] += iu + id;
    }
    {
        const std::size_t a = m - 1;
        const double du1 = lo.g1[a + 1] - lo.g1[a];
        const double dv1 = up.g1[a] - lo.g1[a];
        const double du2 = lo.g2[a + 1] - lo.g2[a];
        const double dv2 = up.g2[a] - lo.g2[a];
        const double det_up = du1 * dv2 - dv1 * du2;
        s[a & 3] += ((lo.f[a] + lo.f[a + 1]) + up.f[a]) * det_up;
        t[a & 3] += lo.f[a] * det_up;
    }
    return {(s[0] + s[1]) + (s[2] + s[3]), (t[0] + t[1]) + (t[2] + t[3])};
}

} // namespace roughint::kernels
