#pragma once

#include "dimenfix/data.hpp"
#include "dimenfix/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace dimenfix {

/// Low-dimensional coordinates being optimized. The last axis is the fixed
/// axis; `fixed_origin` holds the values assigned to it by fix_axis.
struct Embedding {
    Matrix coords;
    std::optional<std::vector<double>> fixed_origin;

    std::size_t n_points() const noexcept { return coords.rows(); }
    std::size_t dims() const noexcept { return coords.cols(); }
    std::size_t fixed_axis() const noexcept { return coords.cols() - 1; }

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct RandomInit {
    std::uint64_t seed = 0;
};
struct PcaInit {};

using InitMode = std::variant<RandomInit, PcaInit>;

/// Principal axes of the mean-centered data, strongest first.
struct PcaResult {
    Matrix components; // k x F, each row unit norm
    std::vector<double> variances; // eigenvalues of the covariance (divisor N - 1)
    std::vector<double> mean; // length F
    int sweeps = 0;
};

/// Top-k principal components via cyclic Jacobi on the F x F covariance.
/// Each component's largest-magnitude loading is made positive.
PcaResult principal_components(const Matrix& values, std::size_t k);

/// Scores of `values` on the given components, N x k.
Matrix project_onto(const Matrix& values, const PcaResult& pca);

/// Initial coordinates: uniform over `range` on every axis (random mode) or
/// PCA scores of the mean-centered data (pca mode). dims must be 2 or 3.
Embedding init_embedding(const Dataset& d, std::size_t dims, const InitMode& mode,
                         const ScaleRange& range = {});

/// Writes `values` into the last axis and records them as the origin.
Embedding fix_axis(Embedding e, std::span<const double> values);

} // namespace dimenfix
