#include "dimenfix/io.hpp"

#include "dimenfix/csv.hpp"
#include "dimenfix/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dimenfix::io {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw Error("read failed on '" + path.string() + "'");
    }
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw Error("write failed on '" + path.string() + "'");
    }
}

std::string projection_csv(const Matrix& coords,
                           const std::optional<std::vector<std::string>>& labels) {
    std::vector<std::string> fields{"id"};
    for (std::size_t k = 0; k < coords.cols(); ++k) {
        fields.push_back("dim" + std::to_string(k));
    }
    if (labels) {
        fields.emplace_back("label");
    }
    std::string out = csv::format_row(fields) + "\n";
    for (std::size_t r = 0; r < coords.rows(); ++r) {
        fields.clear();
        fields.push_back(std::to_string(r));
        for (double v : coords.row(r)) {
            fields.push_back(csv::format_double(v));
        }
        if (labels) {
            fields.push_back((*labels)[r]);
        }
        out += csv::format_row(fields);
        out.push_back('\n');
    }
    return out;
}

Projection parse_projection(std::string_view text, const std::optional<std::string>& label_column,
                            std::string_view source) {
    const std::string where(source);
    auto rows = csv::parse(text);
    if (rows.empty()) {
        throw ParseError(where + ": missing header row");
    }
    const auto& header = rows.front();
    std::vector<std::size_t> dim_cols;
    std::optional<std::size_t> label_at;
    for (std::size_t k = 0;; ++k) {
        const std::string name = "dim" + std::to_string(k);
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            break;
        }
        dim_cols.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    if (dim_cols.empty()) {
        throw ParseError(where + ": no dim0 column in projection header");
    }
    if (label_column) {
        auto it = std::find(header.begin(), header.end(), *label_column);
        if (it == header.end()) {
            throw ParseError(where + ": label column '" + *label_column + "' not in header");
        }
        label_at = static_cast<std::size_t>(it - header.begin());
    }

    Projection p;
    p.coords = Matrix(rows.size() - 1, dim_cols.size());
    if (label_at) {
        p.labels.emplace();
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size()) {
            throw ParseError(where + ": line " + std::to_string(r + 1) + " has " +
                             std::to_string(row.size()) + " fields, header has " +
                             std::to_string(header.size()));
        }
        for (std::size_t k = 0; k < dim_cols.size(); ++k) {
            double v = 0.0;
            const auto& cell = row[dim_cols[k]];
            if (!csv::parse_double(cell, v) || !std::isfinite(v)) {
                throw ParseError(where + ": line " + std::to_string(r + 1) + ", column dim" +
                                 std::to_string(k) + ": cannot parse '" + cell + "'");
            }
            p.coords(r - 1, k) = v;
        }
        if (label_at) {
            p.labels->push_back(row[*label_at]);
        }
    }
    return p;
}

Projection load_projection(const std::filesystem::path& path,
                           const std::optional<std::string>& label_column) {
    return parse_projection(read_file(path), label_column, path.string());
}

std::string format_key_values(const KeyValues& kv, std::string_view heading) {
    std::string out;
    if (!heading.empty()) {
        out += "# ";
        out += heading;
        out += '\n';
    }
    for (const auto& [k, v] : kv) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

} // namespace dimenfix::io
