#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heis/coeffs.hpp"

namespace heis {

/// Exact sparse rational matrix; rows hold (column, value) pairs sorted by column.
class Matrix {
public:
    struct Entry {
        int col;
        Rational val;
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    using Row = std::vector<Entry>;

    Matrix() = default;
    Matrix(int rows, int cols);
    static Matrix identity(int n);
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational get(int i, int j) const;
    void set(int i, int j, const Rational& v);
    void add_to(int i, int j, const Rational& v);
    const Row& row(int i) const { return data_[static_cast<std::size_t>(i)]; }
    void set_row(int i, Row r);
    bool is_zero() const;
    std::size_t nonzeros() const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Rational& s) const;
    Matrix& operator+=(const Matrix& o);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

    Matrix transpose() const;
    Matrix block(int r0, int c0, int nr, int nc) const;
    void put_block(int r0, int c0, const Matrix& b);

    std::optional<Matrix> inverse() const;
    int rank() const;

    /// Nested JSON array of rational strings.
    std::string to_json() const;
    std::string str() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Row> data_;
};

/// I_n (x) m, i.e. n diagonal copies of m.
Matrix kron_identity(int n, const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
/// Stacks the entries of each matrix into one row per matrix position; used for rank tests.
Matrix hstack(const std::vector<Matrix>& blocks);
Matrix vstack(const std::vector<Matrix>& blocks);

}  // namespace heis
