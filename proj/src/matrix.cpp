#include "dimenfix/matrix.hpp"

#include "dimenfix/error.hpp"

#include <algorithm>

namespace dimenfix {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw InvalidArgument("ragged rows: row " + std::to_string(r) + " has " +
                                  std::to_string(rows[r].size()) + " columns, expected " +
                                  std::to_string(cols));
        }
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

void Matrix::set_column(std::size_t c, std::span<const double> values) {
    if (values.size() != rows_) {
        throw InvalidArgument("column length " + std::to_string(values.size()) +
                              " does not match row count " + std::to_string(rows_));
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = values[r];
    }
}

} // namespace dimenfix
