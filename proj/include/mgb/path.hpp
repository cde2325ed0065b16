#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mgb {

/// Realized increments xi_1..xi_n with cached partial sums
/// S_k = fl(S_{k-1} + xi_k), S_0 = 0.
class Path {
public:
    Path() = default;

    /// Throws std::invalid_argument on an empty sequence.
    explicit Path(std::vector<double> increments);

    /// Re-fills the path in place; the storage is reused across calls.
    void assign(std::span<const double> increments);

    /// Writable storage of length n for in-place sampling; call
    /// refresh_sums() afterwards.
    std::span<double> resize_for_fill(std::size_t n);
    void refresh_sums();

    std::size_t size() const noexcept { return increments_.size(); }
    std::span<const double> increments() const noexcept { return increments_; }
    std::span<const double> partial_sums() const noexcept { return sums_; }

private:
    std::vector<double> increments_;
    std::vector<double> sums_;
};

}  // namespace mgb
