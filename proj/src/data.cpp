#include "dimenfix/data.hpp"

#include "dimenfix/csv.hpp"
#include "dimenfix/error.hpp"
#include "dimenfix/io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

namespace dimenfix {

void validate(const ScaleRange& range) {
    if (!std::isfinite(range.low) || !std::isfinite(range.high) || !(range.low < range.high)) {
        throw InvalidArgument("scale range needs finite low < high, got (" +
                              csv::format_double(range.low) + ", " +
                              csv::format_double(range.high) + ")");
    }
}

ScaleRange parse_scale_range(std::string_view text) {
    const auto comma = text.find(',');
    ScaleRange r;
    if (comma == std::string_view::npos || !csv::parse_double(text.substr(0, comma), r.low) ||
        !csv::parse_double(text.substr(comma + 1), r.high)) {
        throw InvalidArgument("scale range must look like LO,HI, got '" + std::string(text) + "'");
    }
    validate(r);
    return r;
}

Dataset::Dataset(Matrix values, std::vector<std::string> feature_names,
                 std::optional<std::vector<std::string>> labels)
    : values_(std::move(values)), feature_names_(std::move(feature_names)),
      labels_(std::move(labels)) {
    if (values_.rows() < 2) {
        throw InvalidArgument("dataset needs at least 2 samples, got " +
                              std::to_string(values_.rows()));
    }
    if (values_.cols() < 1) {
        throw InvalidArgument("dataset needs at least 1 feature");
    }
    if (feature_names_.size() != values_.cols()) {
        throw InvalidArgument("got " + std::to_string(feature_names_.size()) +
                              " feature names for " + std::to_string(values_.cols()) + " columns");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names_) {
        if (!seen.insert(name).second) {
            throw InvalidArgument("duplicate feature name '" + name + "'");
        }
    }
    for (std::size_t r = 0; r < values_.rows(); ++r) {
        for (std::size_t c = 0; c < values_.cols(); ++c) {
            if (!std::isfinite(values_(r, c))) {
                throw InvalidArgument("non-finite value at row " + std::to_string(r) +
                                      ", feature '" + feature_names_[c] + "'");
            }
        }
    }
    if (labels_ && labels_->size() != values_.rows()) {
        throw InvalidArgument("got " + std::to_string(labels_->size()) + " labels for " +
                              std::to_string(values_.rows()) + " samples");
    }
}

std::size_t Dataset::feature_index(std::string_view name) const {
    auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
    if (it == feature_names_.end()) {
        throw InvalidArgument("unknown feature '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - feature_names_.begin());
}

Dataset parse_csv_dataset(std::string_view text, std::optional<std::string> label_column,
                          std::string_view source) {
    const std::string where(source);
    auto rows = csv::parse(text);
    if (rows.empty()) {
        throw ParseError(where + ": missing header row");
    }
    const csv::Row& header = rows.front();

    std::optional<std::size_t> label_at;
    if (label_column) {
        auto it = std::find(header.begin(), header.end(), *label_column);
        if (it == header.end()) {
            throw ParseError(where + ": label column '" + *label_column + "' not in header");
        }
        label_at = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<std::string> names;
    std::unordered_set<std::string> seen;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (!seen.insert(header[c]).second) {
            throw ParseError(where + ": duplicate header name '" + header[c] + "'");
        }
        if (c != label_at) {
            names.push_back(header[c]);
        }
    }

    const std::size_t n = rows.size() - 1;
    if (n < 2) {
        throw ParseError(where + ": need at least 2 data rows, got " + std::to_string(n));
    }

    Matrix values(n, names.size());
    std::optional<std::vector<std::string>> labels;
    if (label_at) {
        labels.emplace();
        labels->reserve(n);
    }
    for (std::size_t r = 0; r < n; ++r) {
        const csv::Row& row = rows[r + 1];
        // Line numbers are 1-based and count the header.
        const std::string line = std::to_string(r + 2);
        if (row.size() != header.size()) {
            throw ParseError(where + ": line " + line + " has " + std::to_string(row.size()) +
                             " fields, header has " + std::to_string(header.size()));
        }
        std::size_t out_col = 0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == label_at) {
                labels->push_back(row[c]);
                continue;
            }
            double v = 0.0;
            if (!csv::parse_double(row[c], v) || !std::isfinite(v)) {
                throw ParseError(where + ": line " + line + ", column '" + header[c] +
                                 "': cannot parse '" + row[c] + "' as a finite number");
            }
            values(r, out_col++) = v;
        }
    }
    return Dataset(std::move(values), std::move(names), std::move(labels));
}

Dataset load_csv(const std::filesystem::path& path, std::optional<std::string> label_column) {
    return parse_csv_dataset(io::read_file(path), std::move(label_column), path.string());
}

Matrix scale_columns(const Matrix& values, const ScaleRange& range) {
    validate(range);
    Matrix out(values.rows(), values.cols());
    const double width = range.high - range.low;
    for (std::size_t c = 0; c < values.cols(); ++c) {
        double lo = values(0, c);
        double hi = lo;
        for (std::size_t r = 1; r < values.rows(); ++r) {
            lo = std::min(lo, values(r, c));
            hi = std::max(hi, values(r, c));
        }
        for (std::size_t r = 0; r < values.rows(); ++r) {
            const double v = values(r, c);
            double s;
            if (hi == lo) {
                s = range.midpoint();
            } else if (v == lo) {
                s = range.low;
            } else if (v == hi) {
                s = range.high;
            } else {
                s = range.low + (v - lo) / (hi - lo) * width;
            }
            out(r, c) = s;
        }
    }
    return out;
}

Dataset scale_features(const Dataset& d, const ScaleRange& range) {
    return Dataset(scale_columns(d.values(), range), d.feature_names(), d.labels());
}

std::vector<double> extract_feature(const Dataset& d, std::string_view name) {
    return d.values().column(d.feature_index(name));
}

Dataset subsample(const Dataset& d, std::size_t count, std::uint64_t seed) {
    const std::size_t n = d.n_samples();
    if (count == 0 || count >= n) {
        return d;
    }
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::size_t> keep;
    keep.reserve(count);
    std::mt19937_64 rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(keep), count, rng);

    Matrix values(count, d.n_features());
    std::optional<std::vector<std::string>> labels;
    if (d.labels()) {
        labels.emplace();
    }
    for (std::size_t r = 0; r < count; ++r) {
        auto src = d.values().row(keep[r]);
        std::copy(src.begin(), src.end(), values.row(r).begin());
        if (labels) {
            labels->push_back((*d.labels())[keep[r]]);
        }
    }
    return Dataset(std::move(values), d.feature_names(), std::move(labels));
}

} // namespace dimenfix
