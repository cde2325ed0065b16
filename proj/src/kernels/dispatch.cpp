#include "kernels_impl.hpp"

namespace mgb::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_table() {
    static const KernelTable table{Isa::Scalar, scalar::squares, scalar::squares_above, scalar::squares_abs_above,
                                   scalar::first_joint_hit, scalar::max_value};
    return table;
}

const KernelTable* simd_table() {
#if defined(MGB_HAVE_AVX2)
    static const KernelTable table{Isa::Avx2, avx2::squares, avx2::squares_above, avx2::squares_abs_above,
                                   avx2::first_joint_hit, avx2::max_value};
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &table : nullptr;
#elif defined(MGB_HAVE_NEON)
    static const KernelTable table{Isa::Neon, neon::squares, neon::squares_above, neon::squares_abs_above,
                                   neon::first_joint_hit, neon::max_value};
    return &table;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable& table = simd_table() ? *simd_table() : scalar_table();
    return table;
}

}  // namespace mgb::kernels
