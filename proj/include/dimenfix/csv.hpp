#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dimenfix::csv {

using Row = std::vector<std::string>;

/// Splits an RFC-4180 document into rows of fields. Handles quoted fields
/// with embedded commas, doubled quotes and line breaks, and CRLF endings.
/// Blank lines are skipped.
std::vector<Row> parse(std::string_view text);

/// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);

std::string format_row(std::span<const std::string> fields);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Strict full-field parse; returns false on trailing garbage or empty input.
bool parse_double(std::string_view text, double& out);

} // namespace dimenfix::csv
