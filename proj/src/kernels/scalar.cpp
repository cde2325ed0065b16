#include "kernels_impl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mgb::kernels::scalar {

void squares(std::span<const double> xi, std::span<double> out) {
    for (std::size_t i = 0; i < xi.size(); ++i) out[i] = xi[i] * xi[i];
}

void squares_above(std::span<const double> xi, double y, std::span<double> out) {
    for (std::size_t i = 0; i < xi.size(); ++i) out[i] = xi[i] > y ? xi[i] * xi[i] : 0.0;
}

void squares_abs_above(std::span<const double> xi, double y, std::span<double> out) {
    for (std::size_t i = 0; i < xi.size(); ++i) out[i] = std::fabs(xi[i]) > y ? xi[i] * xi[i] : 0.0;
}

std::size_t first_joint_hit(std::span<const double> sums, std::span<const double> chars, double x,
                            double budget) {
    for (std::size_t k = 0; k < sums.size(); ++k) {
        if (!(chars[k] <= budget)) return kNoHit;
        if (sums[k] >= x) return k;
    }
    return kNoHit;
}

double max_value(std::span<const double> values) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values) m = std::max(m, v);
    return m;
}

}  // namespace mgb::kernels::scalar
