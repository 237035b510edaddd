#pragma once

#include "dimenfix/matrix.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dimenfix::io {

/// Projection table: header `id,dim0,...,dim{n-1}[,label]`.
struct Projection {
    Matrix coords;
    std::optional<std::vector<std::string>> labels;
};

std::string projection_csv(const Matrix& coords,
                           const std::optional<std::vector<std::string>>& labels);

/// Reads a projection CSV. Columns named dim<k> become coordinates; the
/// column named `label_column` (if any) becomes labels.
Projection parse_projection(std::string_view text,
                            const std::optional<std::string>& label_column = std::nullopt,
                            std::string_view source = "<memory>");
Projection load_projection(const std::filesystem::path& path,
                           const std::optional<std::string>& label_column = std::nullopt);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Ordered key=value pairs, one per line.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

std::string format_key_values(const KeyValues& kv, std::string_view heading = {});

} // namespace dimenfix::io
