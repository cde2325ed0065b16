#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops of path characteristics and event scans.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variants use
// only lane-wise IEEE operations (mul, compare, select, max) so their output
// is bit-identical to the scalar reference; the equivalence tests assert
// that exactly.
namespace mgb::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

inline constexpr std::size_t kNoHit = static_cast<std::size_t>(-1);

struct KernelTable {
    Isa isa;

    // out[i] = xi[i]^2
    void (*squares)(std::span<const double> xi, std::span<double> out);

    // out[i] = xi[i]^2 if xi[i] > y else 0
    void (*squares_above)(std::span<const double> xi, double y, std::span<double> out);

    // out[i] = xi[i]^2 if |xi[i]| > y else 0
    void (*squares_abs_above)(std::span<const double> xi, double y, std::span<double> out);

    // Smallest k with sums[k] >= x and chars[k] <= budget, or kNoHit.
    // `chars` must be nondecreasing; the scan stops at the first
    // chars[k] > budget.
    std::size_t (*first_joint_hit)(std::span<const double> sums, std::span<const double> chars, double x,
                                   double budget);

    // Largest element; -inf for an empty span.
    double (*max_value)(std::span<const double> values);
};

const KernelTable& scalar_table();

/// nullptr when the variant is not compiled in or the CPU lacks it.
const KernelTable* simd_table();

/// The table used by the library: the SIMD variant when available.
const KernelTable& active();

}  // namespace mgb::kernels
