#pragma once

#include "dimenfix/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dimenfix {

/// Target interval for per-feature min-max normalization.
struct ScaleRange {
    double low = 0.0;
    double high = 1.0;

    double midpoint() const noexcept { return 0.5 * (low + high); }
    friend bool operator==(const ScaleRange&, const ScaleRange&) = default;
};

/// Throws InvalidArgument unless low < high and both are finite.
void validate(const ScaleRange& range);

/// Parses "LO,HI".
ScaleRange parse_scale_range(std::string_view text);

/// N x F sample matrix with unique feature names and optional class labels.
///
/// Construction validates the invariants (N >= 2, F >= 1, finite entries,
/// unique names, label count == N); every transformation returns a new value.
class Dataset {
public:
    Dataset(Matrix values, std::vector<std::string> feature_names,
            std::optional<std::vector<std::string>> labels = std::nullopt);

    const Matrix& values() const noexcept { return values_; }
    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
    const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }

    std::size_t n_samples() const noexcept { return values_.rows(); }
    std::size_t n_features() const noexcept { return values_.cols(); }

    /// Index of a feature by name; throws InvalidArgument when unknown.
    std::size_t feature_index(std::string_view name) const;

private:
    Matrix values_;
    std::vector<std::string> feature_names_;
    std::optional<std::vector<std::string>> labels_;
};

/// Reads a header-first CSV file. `label_column`, when given, names the
/// column holding class tags; every other column must be numeric.
Dataset load_csv(const std::filesystem::path& path,
                 std::optional<std::string> label_column = std::nullopt);

/// Same as load_csv, reading from an in-memory document. `source` is only
/// used in error messages.
Dataset parse_csv_dataset(std::string_view text, std::optional<std::string> label_column,
                          std::string_view source = "<memory>");

/// Maps each column affinely so its min lands on range.low and its max on
/// range.high. Constant columns map to the range midpoint.
Matrix scale_columns(const Matrix& values, const ScaleRange& range);

Dataset scale_features(const Dataset& d, const ScaleRange& range);

/// Copy of the named column, row order preserved.
std::vector<double> extract_feature(const Dataset& d, std::string_view name);

/// Seeded subsample of `count` rows (row order of the survivors preserved).
/// Returns `d` unchanged when count == 0 or count >= N.
Dataset subsample(const Dataset& d, std::size_t count, std::uint64_t seed);

} // namespace dimenfix
