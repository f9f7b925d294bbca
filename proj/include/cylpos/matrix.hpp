#ifndef CYLPOS_MATRIX_HPP
#define CYLPOS_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cylpos/rational.hpp"

namespace cylpos {

using Column = std::vector<Rational>;

/// Ordered list of values whose signs are inspected (a Δ-sequence or any vector).
using SignSeq = std::vector<Rational>;

/// Dense m×n matrix of exact rationals, stored column-major since every
/// operation in this library acts on whole columns. Indices are 0-based;
/// `cyclic_column` resolves any integer column index modulo n.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t m);
    static Matrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows);
    static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);
    /// All columns must have the same (nonzero) length.
    static Matrix from_columns(const std::vector<Column>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }

    std::span<const Rational> column(std::size_t c) const {
        return {data_.data() + c * rows_, rows_};
    }
    Column column_copy(std::size_t c) const;

    /// Column index i taken modulo n; negative i allowed.
    std::size_t wrap(long i) const;
    std::span<const Rational> cyclic_column(long i) const { return column(wrap(i)); }

    Matrix without_column(std::size_t c) const;
    Matrix with_column_inserted(std::size_t position, std::span<const Rational> col) const;
    Matrix with_column_replaced(std::size_t c, std::span<const Rational> col) const;
    Matrix select_columns(std::span<const std::size_t> cols) const;

    bool is_nonnegative() const;
    bool is_column_zero(std::size_t c) const;
    std::size_t count_zero_entries() const;

    /// Compact form such as [[1,2],[0,1/2]].
    std::string str() const;

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

bool is_zero_vector(std::span<const Rational> v);

}  // namespace cylpos

#endif  // CYLPOS_MATRIX_HPP
