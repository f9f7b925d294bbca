#include "cylpos/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "cylpos/errors.hpp"

namespace cylpos {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t m) {
    Matrix id(m, m);
    for (std::size_t i = 0; i < m; ++i) id(i, i) = 1;
    return id;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::vector<std::vector<Rational>> copy;
    for (const auto& r : rows) copy.emplace_back(r);
    return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return Matrix();
    const std::size_t n = rows.front().size();
    Matrix out(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n) throw InputError("ragged rows in matrix literal");
        for (std::size_t c = 0; c < n; ++c) out(r, c) = rows[r][c];
    }
    return out;
}

Matrix Matrix::from_columns(const std::vector<Column>& columns, std::size_t rows) {
    Matrix out(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw InputError("column length differs from row count");
        std::copy(columns[c].begin(), columns[c].end(), out.data_.begin() + c * rows);
    }
    return out;
}

Column Matrix::column_copy(std::size_t c) const {
    auto col = column(c);
    return Column(col.begin(), col.end());
}

std::size_t Matrix::wrap(long i) const {
    if (cols_ == 0) throw InputError("cyclic index into a matrix without columns");
    const long n = static_cast<long>(cols_);
    return static_cast<std::size_t>(((i % n) + n) % n);
}

Matrix Matrix::without_column(std::size_t c) const {
    if (c >= cols_) throw InputError("column index out of range");
    Matrix out(rows_, cols_ - 1);
    auto dst = out.data_.begin();
    dst = std::copy(data_.begin(), data_.begin() + c * rows_, dst);
    std::copy(data_.begin() + (c + 1) * rows_, data_.end(), dst);
    return out;
}

Matrix Matrix::with_column_inserted(std::size_t position, std::span<const Rational> col) const {
    if (position > cols_) throw InputError("column insert position out of range");
    if (col.size() != rows_) throw InputError("inserted column has wrong length");
    Matrix out(rows_, cols_ + 1);
    auto dst = out.data_.begin();
    dst = std::copy(data_.begin(), data_.begin() + position * rows_, dst);
    dst = std::copy(col.begin(), col.end(), dst);
    std::copy(data_.begin() + position * rows_, data_.end(), dst);
    return out;
}

Matrix Matrix::with_column_replaced(std::size_t c, std::span<const Rational> col) const {
    if (c >= cols_) throw InputError("column index out of range");
    if (col.size() != rows_) throw InputError("replacement column has wrong length");
    Matrix out = *this;
    std::copy(col.begin(), col.end(), out.data_.begin() + c * rows_);
    return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
    Matrix out(rows_, cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (cols[k] >= cols_) throw InputError("column index out of range");
        auto src = column(cols[k]);
        std::copy(src.begin(), src.end(), out.data_.begin() + k * rows_);
    }
    return out;
}

bool Matrix::is_nonnegative() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.sign() >= 0; });
}

bool Matrix::is_column_zero(std::size_t c) const { return is_zero_vector(column(c)); }

std::size_t Matrix::count_zero_entries() const {
    return static_cast<std::size_t>(
        std::count_if(data_.begin(), data_.end(), [](const Rational& x) { return x.is_zero(); }));
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << ',';
        os << '[';
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ',';
            os << (*this)(r, c);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

bool is_zero_vector(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

}  // namespace cylpos
