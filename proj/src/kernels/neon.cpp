#include "kernels_impl.hpp"

#include <arm_neon.h>

#include <algorithm>
#include <cstdint>
#include <limits>

namespace mgb::kernels::neon {

namespace {
constexpr std::size_t kWidth = 2;
}

void squares(std::span<const double> xi, std::span<double> out) {
    const std::size_t n = xi.size();
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const float64x2_t v = vld1q_f64(xi.data() + i);
        vst1q_f64(out.data() + i, vmulq_f64(v, v));
    }
    scalar::squares(xi.subspan(i), out.subspan(i));
}

void squares_above(std::span<const double> xi, double y, std::span<double> out) {
    const std::size_t n = xi.size();
    const float64x2_t level = vdupq_n_f64(y);
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const float64x2_t v = vld1q_f64(xi.data() + i);
        const uint64x2_t keep = vcgtq_f64(v, level);
        vst1q_f64(out.data() + i, vbslq_f64(keep, vmulq_f64(v, v), zero));
    }
    scalar::squares_above(xi.subspan(i), y, out.subspan(i));
}

void squares_abs_above(std::span<const double> xi, double y, std::span<double> out) {
    const std::size_t n = xi.size();
    const float64x2_t level = vdupq_n_f64(y);
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) {
        const float64x2_t v = vld1q_f64(xi.data() + i);
        const uint64x2_t keep = vcgtq_f64(vabsq_f64(v), level);
        vst1q_f64(out.data() + i, vbslq_f64(keep, vmulq_f64(v, v), zero));
    }
    scalar::squares_abs_above(xi.subspan(i), y, out.subspan(i));
}

std::size_t first_joint_hit(std::span<const double> sums, std::span<const double> chars, double x,
                            double budget) {
    const std::size_t n = sums.size();
    const float64x2_t threshold = vdupq_n_f64(x);
    const float64x2_t cap = vdupq_n_f64(budget);
    std::size_t k = 0;
    for (; k + kWidth <= n; k += kWidth) {
        const uint64x2_t within = vcleq_f64(vld1q_f64(chars.data() + k), cap);
        const uint64x2_t reached = vcgeq_f64(vld1q_f64(sums.data() + k), threshold);
        const uint64x2_t hit = vandq_u64(within, reached);
        for (std::size_t lane = 0; lane < kWidth; ++lane) {
            const std::uint64_t w = lane == 0 ? vgetq_lane_u64(within, 0) : vgetq_lane_u64(within, 1);
            const std::uint64_t h = lane == 0 ? vgetq_lane_u64(hit, 0) : vgetq_lane_u64(hit, 1);
            if (h != 0) return k + lane;
            if (w == 0) return kNoHit;
        }
    }
    const std::size_t tail = scalar::first_joint_hit(sums.subspan(k), chars.subspan(k), x, budget);
    return tail == kNoHit ? kNoHit : k + tail;
}

double max_value(std::span<const double> values) {
    const std::size_t n = values.size();
    float64x2_t acc = vdupq_n_f64(-std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + kWidth <= n; i += kWidth) acc = vmaxq_f64(acc, vld1q_f64(values.data() + i));
    double m = scalar::max_value(values.subspan(i));
    m = std::max(m, vgetq_lane_f64(acc, 0));
    m = std::max(m, vgetq_lane_f64(acc, 1));
    return m;
}

}  // namespace mgb::kernels::neon
