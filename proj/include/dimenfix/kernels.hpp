#pragma once

// Data-parallel building blocks. Each kernel exists twice: a plain serial
// reference used by the tests, and an OpenMP version used by the library.
// Both produce bit-identical results for the distance and neighbor kernels;
// the stress sums differ only in summation order.

#include "dimenfix/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dimenfix::kernels {

struct StressSums {
    double residual = 0.0; // sum of (d - delta)^2
    double reference = 0.0; // sum of d^2
};

/// Offset of pair (i, j), i < j, in the condensed upper-triangle layout.
constexpr std::size_t condensed_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

namespace serial {

std::vector<double> pairwise_distances(const Matrix& points);

StressSums stress_sums(std::span<const double> original, std::span<const double> projected);

/// For each row, indices of its k nearest other rows ordered by
/// (distance, index). Output is row-major N x k.
std::vector<std::size_t> nearest_neighbors(const Matrix& points, std::size_t k);

} // namespace serial

namespace parallel {

std::vector<double> pairwise_distances(const Matrix& points);

/// Per-row partial sums are reduced in row order, so the result does not
/// depend on the thread count.
StressSums stress_sums(std::span<const double> original, std::span<const double> projected,
                       std::size_t n_points);

std::vector<std::size_t> nearest_neighbors(const Matrix& points, std::size_t k);

} // namespace parallel

} // namespace dimenfix::kernels
