#include "roughint/kernels.hpp"

#include <atomic>

#include "roughint/errors.hpp"

namespace roughint::kernels {

namespace {
// -1: detect, otherwise an Isa value.
std::atomic<int> g_override{-1};

bool cpu_has_avx2() {
#if defined(ROUGHINT_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}
} // namespace

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

Isa active_isa() {
    const int o = g_override.load();
    if (o >= 0) return static_cast<Isa>(o);
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

void set_isa_override(std::optional<Isa> isa) {
    if (isa && !isa_supported(*isa)) throw InvalidArgument("kernel ISA " + to_string(*isa) + " not supported on this CPU");
    g_override.store(isa ? static_cast<int>(*isa) : -1);
}

StripFn strip_kernel(Isa isa) {
#if defined(ROUGHINT_HAVE_AVX2_KERNEL)
    if (isa == Isa::Avx2 && cpu_has_avx2()) return &strip_sums_avx2;
#endif
    (void)isa;
    return &strip_sums_scalar;
}

} // namespace roughint::kernels
