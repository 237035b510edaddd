#include "dimenfix/geometry.hpp"

#include "dimenfix/error.hpp"
#include "dimenfix/io.hpp"
#include "dimenfix/kernels.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace dimenfix {

CondensedDistanceMatrix::CondensedDistanceMatrix(std::size_t n_points, std::vector<double> entries)
    : n_points_(n_points), entries_(std::move(entries)) {
    const std::size_t expected = n_points < 2 ? 0 : n_points * (n_points - 1) / 2;
    if (entries_.size() != expected) {
        throw InvalidArgument("condensed matrix for " + std::to_string(n_points) + " points needs " +
                              std::to_string(expected) + " entries, got " +
                              std::to_string(entries_.size()));
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (!std::isfinite(entries_[k]) || entries_[k] < 0.0) {
            throw InvalidArgument("condensed matrix entry " + std::to_string(k) +
                                  " is negative or non-finite");
        }
    }
}

double CondensedDistanceMatrix::get(std::size_t i, std::size_t j) const {
    if (i >= n_points_ || j >= n_points_) {
        throw InvalidArgument("distance index (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") out of range for " + std::to_string(n_points_) + " points");
    }
    if (i == j) {
        return 0.0;
    }
    return at_unchecked(i, j);
}

double CondensedDistanceMatrix::at_unchecked(std::size_t i, std::size_t j) const noexcept {
    if (i > j) {
        std::swap(i, j);
    }
    return entries_[kernels::condensed_index(n_points_, i, j)];
}

CondensedDistanceMatrix build_distance_matrix(const Matrix& points) {
    return CondensedDistanceMatrix(points.rows(), kernels::parallel::pairwise_distances(points));
}

CondensedDistanceMatrix build_distance_matrix(const Dataset& d) {
    return build_distance_matrix(d.values());
}

namespace {

std::uint64_t to_little(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) {
        v = __builtin_bswap64(v);
    }
    return v;
}

void put_u64(std::string& out, std::uint64_t v) {
    v = to_little(v);
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
}

std::uint64_t get_u64(std::string_view in, std::size_t offset) {
    std::uint64_t v;
    std::memcpy(&v, in.data() + offset, 8);
    return to_little(v);
}

} // namespace

void save_distance_matrix(const CondensedDistanceMatrix& m, const std::filesystem::path& path) {
    std::string out;
    out.reserve(8 * (m.entries().size() + 1));
    put_u64(out, m.entries().size());
    for (double v : m.entries()) {
        put_u64(out, std::bit_cast<std::uint64_t>(v));
    }
    io::write_file(path, out);
}

CondensedDistanceMatrix load_distance_matrix(const std::filesystem::path& path) {
    const std::string bytes = io::read_file(path);
    if (bytes.size() < 8) {
        throw ParseError(path.string() + ": truncated distance dump");
    }
    const std::uint64_t count = get_u64(bytes, 0);
    if (bytes.size() != 8 * (count + 1)) {
        throw ParseError(path.string() + ": expected " + std::to_string(count) +
                         " entries, file holds " + std::to_string(bytes.size() / 8 - 1));
    }
    // Solve N(N-1)/2 = count.
    auto n = static_cast<std::size_t>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(count))) / 2.0));
    if (n * (n - 1) / 2 != count) {
        throw ParseError(path.string() + ": entry count " + std::to_string(count) +
                         " is not a triangular number");
    }
    std::vector<double> entries(count);
    for (std::size_t k = 0; k < count; ++k) {
        entries[k] = std::bit_cast<double>(get_u64(bytes, 8 * (k + 1)));
    }
    return CondensedDistanceMatrix(n, std::move(entries));
}

} // namespace dimenfix
