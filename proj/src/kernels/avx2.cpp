// Compiled with -mavx2; only reached after a runtime CPU check.
#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <limits>

namespace mgb::kernels::avx2 {

namespace {
constexpr std::size_t kWidth = 4;

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}
}  // namespace

void squares(std::span<const double> xi, std::span<double> out) {
    const std::size_t n = xi.size();
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const __m256d v = _mm256_loadu_pd(xi.data() + i);
        _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(v, v));
    }
    scalar::squares(xi.subspan(i), out.subspan(i));
}

void squares_above(std::span<const double> xi, double y, std::span<double> out) {
    const std::size_t n = xi.size();
    const __m256d level = _mm256_set1_pd(y);
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const __m256d v = _mm256_loadu_pd(xi.data() + i);
        const __m256d keep = _mm256_cmp_pd(v, level, _CMP_GT_OQ);
        _mm256_storeu_pd(out.data() + i, _mm256_and_pd(keep, _mm256_mul_pd(v, v)));
    }
    scalar::squares_above(xi.subspan(i), y, out.subspan(i));
}

void squares_abs_above(std::span<const double> xi, double y, std::span<double> out) {
    const std::size_t n = xi.size();
    const __m256d level = _mm256_set1_pd(y);
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const __m256d v = _mm256_loadu_pd(xi.data() + i);
        const __m256d keep = _mm256_cmp_pd(abs_pd(v), level, _CMP_GT_OQ);
        _mm256_storeu_pd(out.data() + i, _mm256_and_pd(keep, _mm256_mul_pd(v, v)));
    }
    scalar::squares_abs_above(xi.subspan(i), y, out.subspan(i));
}

std::size_t first_joint_hit(std::span<const double> sums, std::span<const double> chars, double x,
                            double budget) {
    const std::size_t n = sums.size();
    const __m256d threshold = _mm256_set1_pd(x);
    const __m256d cap = _mm256_set1_pd(budget);
    std::size_t k = 0;
    for (; k + kWidth <= n; k += kWidth) {
        const __m256d s = _mm256_loadu_pd(sums.data() + k);
        const __m256d c = _mm256_loadu_pd(chars.data() + k);
        const __m256d within = _mm256_cmp_pd(c, cap, _CMP_LE_OQ);
        const __m256d reached = _mm256_cmp_pd(s, threshold, _CMP_GE_OQ);
        const unsigned hit = static_cast<unsigned>(_mm256_movemask_pd(_mm256_and_pd(within, reached)));
        const unsigned over = static_cast<unsigned>(_mm256_movemask_pd(within)) ^ 0xFu;
        const unsigned stop = hit | over;
        if (stop != 0) {
            const unsigned lane = static_cast<unsigned>(std::countr_zero(stop));
            return (hit >> lane) & 1u ? k + lane : kNoHit;
        }
    }
    const std::size_t tail = scalar::first_joint_hit(sums.subspan(k), chars.subspan(k), x, budget);
    return tail == kNoHit ? kNoHit : k + tail;
}

double max_value(std::span<const double> values) {
    const std::size_t n = values.size();
    __m256d acc = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        acc = _mm256_max_pd(_mm256_loadu_pd(values.data() + i), acc);
    }
    alignas(32) double lanes[kWidth];
    _mm256_store_pd(lanes, acc);
    double m = scalar::max_value(values.subspan(i));
    for (double lane : lanes) m = std::max(m, lane);
    return m;
}

}  // namespace mgb::kernels::avx2
