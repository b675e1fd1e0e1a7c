#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "thom/error.hpp"
#include "thom/rational.hpp"

namespace thom {

// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error(errc::dimension_mismatch, "matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// Sparse-ish echelon basis of a row space, pivoting on the first nonzero column.
// Rows are kept fully reduced against each other, so reduce() is a one-pass normal form.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t cols) : cols_(cols), pivot_row_(cols, npos) {}

    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }

    // Normal form of v modulo the current row space: zero on every pivot column.
    std::vector<Rational> reduce(std::vector<Rational> v) const {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (v[c] == 0 || pivot_row_[c] == npos) continue;
            Rational f = v[c];
            const auto& row = rows_[pivot_row_[c]];
            for (std::size_t j = c; j < cols_; ++j)
                if (row[j] != 0) v[j] -= f * row[j];
        }
        return v;
    }

    // Returns true if v enlarged the row space.
    bool insert(std::vector<Rational> v) {
        v = reduce(std::move(v));
        std::size_t lead = 0;
        while (lead < cols_ && v[lead] == 0) ++lead;
        if (lead == cols_) return false;
        Rational inv = 1 / v[lead];
        for (auto& x : v) x *= inv;
        // Clear the new pivot column from existing rows.
        for (auto& row : rows_) {
            if (row[lead] == 0) continue;
            Rational f = row[lead];
            for (std::size_t j = lead; j < cols_; ++j)
                if (v[j] != 0) row[j] -= f * v[j];
        }
        pivot_row_[lead] = rows_.size();
        rows_.push_back(std::move(v));
        return true;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t cols_;
    std::vector<std::size_t> pivot_row_;
    std::vector<std::vector<Rational>> rows_;
};

inline std::size_t rank(const std::vector<std::vector<Rational>>& vectors, std::size_t cols) {
    RowEchelon e(cols);
    for (const auto& v : vectors) e.insert(v);
    return e.rank();
}

inline std::size_t rank(const Matrix& m) {
    RowEchelon e(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Rational> row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
        e.insert(std::move(row));
    }
    return e.rank();
}

inline Rational determinant(Matrix m) {
    if (m.rows() != m.cols()) throw Error(errc::dimension_mismatch, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col) == 0) continue;
            Rational f = m(r, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
        }
    }
    return det;
}

inline Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error(errc::dimension_mismatch, "inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix m = a;
    Matrix inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col) == 0) ++pivot;
        if (pivot == n) throw Error(errc::not_invertible, "singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(pivot, j), m(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        Rational p = 1 / m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) *= p;
            inv(col, j) *= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m(r, col) == 0) continue;
            Rational f = m(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

}  // namespace thom
