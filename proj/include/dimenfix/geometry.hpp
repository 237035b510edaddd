#pragma once

#include "dimenfix/data.hpp"
#include "dimenfix/matrix.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace dimenfix {

/// Pairwise Euclidean distances stored as the flattened strict upper
/// triangle: (0,1), (0,2), ..., (0,N-1), (1,2), ...
class CondensedDistanceMatrix {
public:
    CondensedDistanceMatrix() = default;

    /// Takes ownership of `entries`; throws InvalidArgument if the length is
    /// not N(N-1)/2 or any entry is negative or non-finite.
    CondensedDistanceMatrix(std::size_t n_points, std::vector<double> entries);

    std::size_t n_points() const noexcept { return n_points_; }
    std::span<const double> entries() const noexcept { return entries_; }

    /// Symmetric lookup, 0 on the diagonal. Throws InvalidArgument when an
    /// index is out of range.
    double get(std::size_t i, std::size_t j) const;

    /// Unchecked lookup for i != j.
    double at_unchecked(std::size_t i, std::size_t j) const noexcept;

    friend bool operator==(const CondensedDistanceMatrix&, const CondensedDistanceMatrix&) = default;

private:
    std::size_t n_points_ = 0;
    std::vector<double> entries_;
};

CondensedDistanceMatrix build_distance_matrix(const Matrix& points);
CondensedDistanceMatrix build_distance_matrix(const Dataset& d);

/// Binary dump: u64 little-endian entry count L = N(N-1)/2, then L
/// little-endian f64 entries.
void save_distance_matrix(const CondensedDistanceMatrix& m, const std::filesystem::path& path);
CondensedDistanceMatrix load_distance_matrix(const std::filesystem::path& path);

} // namespace dimenfix
