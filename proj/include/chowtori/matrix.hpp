#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "chowtori/integers.hpp"

namespace chowtori::lattice {

// Dense integer matrix, row-major. Dimensions are fixed at construction;
// entries are arbitrary-precision.
class IntegerMatrix {
public:
    IntegerMatrix() : rows_(0), cols_(0) {}
    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    // Rows given as vectors; all must have length `cols`.
    static IntegerMatrix from_rows(std::size_t cols, const std::vector<Vec>& rows);

    static IntegerMatrix from_init(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_row(std::size_t i, const Vec& v);

    IntegerMatrix transpose() const;
    IntegerMatrix operator*(const IntegerMatrix& rhs) const;
    IntegerMatrix operator-(const IntegerMatrix& rhs) const;
    IntegerMatrix operator+(const IntegerMatrix& rhs) const;
    bool operator==(const IntegerMatrix& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
    }
    bool operator!=(const IntegerMatrix& rhs) const { return !(*this == rhs); }

    // Matrix applied to a column vector.
    Vec apply(const Vec& v) const;

    bool is_zero() const;
    bool is_identity() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += c * row_j
    void add_row(std::size_t i, std::size_t j, const Int& c);
    // col_i += c * col_j
    void add_col(std::size_t i, std::size_t j, const Int& c);
    void negate_row(std::size_t i);

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b);

// Fraction-free Gaussian elimination (Bareiss); square input.
Int determinant(const IntegerMatrix& a);

} // namespace chowtori::lattice
