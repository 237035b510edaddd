#pragma once

#include "dimenfix/constraint.hpp"
#include "dimenfix/data.hpp"
#include "dimenfix/engine.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dimenfix::bench {

struct DatasetSpec {
    std::string name;
    std::filesystem::path path;
    std::optional<std::string> fixed_feature;
    std::optional<std::string> label_column;
    std::size_t subsample = 0; // 0 = use every row
};

/// PCA scores with no Force Scheme iterations.
struct PcaOnly {};

using Method = std::variant<ConstraintPolicy, PcaOnly>;

std::string method_name(const Method& m);

/// Parses vanilla | strict | range:A | gauss:A[:CI] | pca-only.
Method parse_method(std::string_view text);

struct BenchGrid {
    std::vector<DatasetSpec> datasets;
    std::vector<Method> methods;
    std::vector<InitKind> inits;
    std::vector<std::uint64_t> seeds;
    double learning_rate = 0.1;
    int iterations = 500;
    std::size_t dims = 3;
    ScaleRange scale{};
    std::size_t knn_k = 1;
};

/// Throws InvalidArgument on empty lists.
void validate(const BenchGrid& grid);

/// Reads the key = value grid format. Relative dataset paths resolve
/// against the grid file's directory.
BenchGrid load_grid(const std::filesystem::path& path);
BenchGrid parse_grid(std::string_view text, const std::filesystem::path& base_dir = {});

struct BenchRow {
    std::string dataset;
    std::string method;
    std::string init;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double stress = 0.0;
    double wall_time_total = 0.0;
    double wall_time_init = 0.0;
    double knn_accuracy = 0.0; // NaN when the dataset has no labels
};

struct Summary {
    double median = 0.0;
    double iqr = 0.0;
};

struct BenchCell {
    std::string dataset;
    std::string method;
    std::string init;
    std::size_t runs = 0;
    std::size_t failures = 0;
    Summary stress;
    Summary wall_time_total;
    Summary wall_time_init;
    Summary knn_accuracy;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchCell> cells;
};

/// Median and interquartile range (linear interpolation between order
/// statistics). NaN entries are ignored; an empty input yields NaNs.
Summary summarize(std::vector<double> values);

/// Runs every dataset x method x init x seed cell. A failing cell becomes a
/// row with ok = false; the grid keeps going. `jobs` > 1 runs cells in
/// parallel (timings are then not isolated).
BenchReport run_grid(const BenchGrid& grid, int jobs = 1);

std::vector<BenchCell> aggregate(const std::vector<BenchRow>& rows);

std::string rows_csv(const BenchReport& report);
std::string cells_csv(const BenchReport& report);

/// Aligned text tables shaped like the timing and stress comparisons:
/// one row per method/init, one column per dataset, medians over seeds.
std::string text_table(const BenchReport& report, const BenchGrid& grid);

} // namespace dimenfix::bench
