#pragma once

#include "mgb/kernels.hpp"

namespace mgb::kernels {

namespace scalar {
void squares(std::span<const double> xi, std::span<double> out);
void squares_above(std::span<const double> xi, double y, std::span<double> out);
void squares_abs_above(std::span<const double> xi, double y, std::span<double> out);
std::size_t first_joint_hit(std::span<const double> sums, std::span<const double> chars, double x, double budget);
double max_value(std::span<const double> values);
}  // namespace scalar

#if defined(MGB_HAVE_AVX2)
namespace avx2 {
void squares(std::span<const double> xi, std::span<double> out);
void squares_above(std::span<const double> xi, double y, std::span<double> out);
void squares_abs_above(std::span<const double> xi, double y, std::span<double> out);
std::size_t first_joint_hit(std::span<const double> sums, std::span<const double> chars, double x, double budget);
double max_value(std::span<const double> values);
}  // namespace avx2
#endif

#if defined(MGB_HAVE_NEON)
namespace neon {
void squares(std::span<const double> xi, std::span<double> out);
void squares_above(std::span<const double> xi, double y, std::span<double> out);
void squares_abs_above(std::span<const double> xi, double y, std::span<double> out);
std::size_t first_joint_hit(std::span<const double> sums, std::span<const double> chars, double x, double budget);
double max_value(std::span<const double> values);
}  // namespace neon
#endif

}  // namespace mgb::kernels
