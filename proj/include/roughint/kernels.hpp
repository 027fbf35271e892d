#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace roughint::kernels {

/// Raw sums over one strip of a level-n lattice: the up triangles
/// [(a,b),(a+1,b),(a,b+1)] and down triangles [(a+1,b+1),(a,b+1),(a+1,b)]
/// between row b (lower, m+1 nodes) and row b+1 (upper, m nodes).
/// strat3 = sum (F0+F1+F2)*det, ito = sum F0*det, with det the increment
/// determinant over the edges leaving the first vertex.
struct StripSums {
    double strat3 = 0.0;
    double ito = 0.0;
};

struct RowData {
    const double* f;
    const double* g1;
    const double* g2;
};

using StripFn = StripSums (*)(RowData lower, RowData upper, std::size_t m);

StripSums strip_sums_scalar(RowData lower, RowData upper, std::size_t m);
#if defined(ROUGHINT_HAVE_AVX2_KERNEL)
StripSums strip_sums_avx2(RowData lower, RowData upper, std::size_t m);
#endif

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);
bool isa_supported(Isa isa);
/// Best kernel for this CPU, or the override when one is set.
Isa active_isa();
/// Pins the kernel choice (nullopt restores detection). Throws when the
/// requested ISA is not supported here.
void set_isa_override(std::optional<Isa> isa);
StripFn strip_kernel(Isa isa);

} // namespace roughint::kernels
