#include "dimenfix/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dimenfix::kernels {

namespace {

double row_distance(const Matrix& points, std::size_t i, std::size_t j) noexcept {
    auto a = points.row(i);
    auto b = points.row(j);
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

// Neighbors of point i ordered by (distance, index).
void neighbors_of(const Matrix& points, std::size_t i, std::size_t k,
                  std::vector<std::pair<double, std::size_t>>& scratch,
                  std::span<std::size_t> out) {
    scratch.clear();
    for (std::size_t j = 0; j < points.rows(); ++j) {
        if (j != i) {
            scratch.emplace_back(row_distance(points, i, j), j);
        }
    }
    std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k),
                      scratch.end());
    for (std::size_t m = 0; m < k; ++m) {
        out[m] = scratch[m].second;
    }
}

} // namespace

namespace serial {

std::vector<double> pairwise_distances(const Matrix& points) {
    const std::size_t n = points.rows();
    std::vector<double> out;
    out.reserve(n < 2 ? 0 : n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.push_back(row_distance(points, i, j));
        }
    }
    return out;
}

StressSums stress_sums(std::span<const double> original, std::span<const double> projected) {
    StressSums s;
    for (std::size_t k = 0; k < original.size(); ++k) {
        const double r = original[k] - projected[k];
        s.residual += r * r;
        s.reference += original[k] * original[k];
    }
    return s;
}

std::vector<std::size_t> nearest_neighbors(const Matrix& points, std::size_t k) {
    const std::size_t n = points.rows();
    k = n == 0 ? 0 : std::min(k, n - 1);
    std::vector<std::size_t> out(n * k);
    std::vector<std::pair<double, std::size_t>> scratch;
    for (std::size_t i = 0; i < n; ++i) {
        neighbors_of(points, i, k, scratch, std::span(out).subspan(i * k, k));
    }
    return out;
}

} // namespace serial

namespace parallel {

std::vector<double> pairwise_distances(const Matrix& points) {
    const auto n = static_cast<std::ptrdiff_t>(points.rows());
    std::vector<double> out(n < 2 ? 0 : points.rows() * (points.rows() - 1) / 2);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        std::size_t at = condensed_index(points.rows(), ui, ui + 1);
        for (std::size_t j = ui + 1; j < points.rows(); ++j) {
            out[at++] = row_distance(points, ui, j);
        }
    }
    return out;
}

StressSums stress_sums(std::span<const double> original, std::span<const double> projected,
                       std::size_t n_points) {
    const auto n = static_cast<std::ptrdiff_t>(n_points);
    std::vector<StressSums> per_row(n_points);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (ui + 1 >= n_points) {
            continue;
        }
        const std::size_t begin = condensed_index(n_points, ui, ui + 1);
        const std::size_t end = begin + (n_points - ui - 1);
        StressSums s;
        for (std::size_t k = begin; k < end; ++k) {
            const double r = original[k] - projected[k];
            s.residual += r * r;
            s.reference += original[k] * original[k];
        }
        per_row[ui] = s;
    }
    StressSums total;
    for (const auto& s : per_row) {
        total.residual += s.residual;
        total.reference += s.reference;
    }
    return total;
}

std::vector<std::size_t> nearest_neighbors(const Matrix& points, std::size_t k) {
    const std::size_t n = points.rows();
    k = n == 0 ? 0 : std::min(k, n - 1);
    std::vector<std::size_t> out(n * k);
#pragma omp parallel
    {
        std::vector<std::pair<double, std::size_t>> scratch;
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            const auto ui = static_cast<std::size_t>(i);
            neighbors_of(points, ui, k, scratch, std::span(out).subspan(ui * k, k));
        }
    }
    return out;
}

} // namespace parallel

} // namespace dimenfix::kernels
