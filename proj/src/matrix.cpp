#include "heis/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace heis {

namespace {

// r += f * s, both sorted.
Matrix::Row axpy(const Matrix::Row& r, const Rational& f, const Matrix::Row& s) {
    Matrix::Row out;
    out.reserve(r.size() + s.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].col < s[j].col)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || s[j].col < r[i].col) {
            out.push_back({s[j].col, f * s[j].val});
            ++j;
        } else {
            Rational v = r[i].val + f * s[j].val;
            if (v != 0) out.push_back({r[i].col, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

const Rational* find(const Matrix::Row& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const Matrix::Entry& e, int c) { return e.col < c; });
    return (it != r.end() && it->col == col) ? &it->val : nullptr;
}

void check_shape(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("matrix shape mismatch in ") + what);
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.data_[static_cast<std::size_t>(i)].push_back({i, Rational(1)});
    return m;
}

Rational Matrix::get(int i, int j) const {
    const Rational* p = find(row(i), j);
    return p ? *p : Rational(0);
}

void Matrix::set(int i, int j, const Rational& v) {
    Row& r = data_.at(static_cast<std::size_t>(i));
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, int c) { return e.col < c; });
    if (it != r.end() && it->col == j) {
        if (v == 0)
            r.erase(it);
        else
            it->val = v;
    } else if (v != 0) {
        r.insert(it, {j, v});
    }
}

void Matrix::add_to(int i, int j, const Rational& v) {
    if (v == 0) return;
    Row& r = data_.at(static_cast<std::size_t>(i));
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, int c) { return e.col < c; });
    if (it != r.end() && it->col == j) {
        it->val += v;
        if (it->val == 0) r.erase(it);
    } else {
        r.insert(it, {j, v});
    }
}

void Matrix::set_row(int i, Row r) { data_.at(static_cast<std::size_t>(i)) = std::move(r); }

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Row& r) { return r.empty(); });
}

std::size_t Matrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_shape(cols_ == o.rows_, "product");
    Matrix out(rows_, o.cols_);
    std::vector<Rational> acc(static_cast<std::size_t>(o.cols_));
    std::vector<char> touched(static_cast<std::size_t>(o.cols_), 0);
    std::vector<int> idx;
    for (int i = 0; i < rows_; ++i) {
        idx.clear();
        for (const auto& [k, a] : row(i))
            for (const auto& [j, b] : o.row(k)) {
                auto uj = static_cast<std::size_t>(j);
                if (!touched[uj]) {
                    touched[uj] = 1;
                    idx.push_back(j);
                    acc[uj] = a * b;
                } else {
                    acc[uj] += a * b;
                }
            }
        std::sort(idx.begin(), idx.end());
        Row& r = out.data_[static_cast<std::size_t>(i)];
        for (int j : idx) {
            auto uj = static_cast<std::size_t>(j);
            if (acc[uj] != 0) r.push_back({j, acc[uj]});
            touched[uj] = 0;
        }
    }
    return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    check_shape(rows_ == o.rows_ && cols_ == o.cols_, "sum");
    for (int i = 0; i < rows_; ++i) data_[static_cast<std::size_t>(i)] = axpy(row(i), Rational(1), o.row(i));
    return *this;
}

Matrix Matrix::operator+(const Matrix& o) const {
    Matrix r = *this;
    return r += o;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_shape(rows_ == o.rows_ && cols_ == o.cols_, "difference");
    Matrix r = *this;
    for (int i = 0; i < rows_; ++i) r.data_[static_cast<std::size_t>(i)] = axpy(row(i), Rational(-1), o.row(i));
    return r;
}

Matrix Matrix::operator*(const Rational& s) const {
    if (s == 0) return Matrix(rows_, cols_);
    Matrix r = *this;
    for (auto& row : r.data_)
        for (auto& e : row) e.val *= s;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [j, v] : row(i)) t.data_[static_cast<std::size_t>(j)].push_back({i, v});
    return t;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
    check_shape(r0 >= 0 && c0 >= 0 && r0 + nr <= rows_ && c0 + nc <= cols_, "block");
    Matrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (const auto& [j, v] : row(r0 + i))
            if (j >= c0 && j < c0 + nc) b.data_[static_cast<std::size_t>(i)].push_back({j - c0, v});
    return b;
}

void Matrix::put_block(int r0, int c0, const Matrix& b) {
    check_shape(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "put_block");
    for (int i = 0; i < b.rows_; ++i)
        for (const auto& [j, v] : b.row(i)) set(r0 + i, c0 + j, v);
}

namespace {

// Gauss-Jordan on sparse rows restricted to the first `ncols` pivot columns.
// Returns pivot column per row index (or -1) after full reduction.
std::vector<int> eliminate(std::vector<Matrix::Row>& rows, int ncols) {
    std::vector<int> pivot_of_row(rows.size(), -1);
    std::vector<char> used(rows.size(), 0);
    for (int c = 0; c < ncols; ++c) {
        int best = -1;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (used[i] || rows[i].empty() || rows[i].front().col != c) continue;
            if (best < 0 || rows[i].size() < best_len) {
                best = static_cast<int>(i);
                best_len = rows[i].size();
            }
        }
        if (best < 0) continue;
        auto b = static_cast<std::size_t>(best);
        used[b] = 1;
        pivot_of_row[b] = c;
        Rational inv = 1 / rows[b].front().val;
        for (auto& e : rows[b]) e.val *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == b) continue;
            const Rational* p = find(rows[i], c);
            if (!p) continue;
            Rational f = -*p;
            rows[i] = axpy(rows[i], f, rows[b]);
        }
    }
    return pivot_of_row;
}

}  // namespace

std::optional<Matrix> Matrix::inverse() const {
    check_shape(rows_ == cols_, "inverse");
    int n = rows_;
    std::vector<Row> aug(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        aug[static_cast<std::size_t>(i)] = row(i);
        aug[static_cast<std::size_t>(i)].push_back({n + i, Rational(1)});
    }
    auto piv = eliminate(aug, n);
    Matrix inv(n, n);
    int found = 0;
    for (std::size_t i = 0; i < aug.size(); ++i) {
        if (piv[i] < 0) return std::nullopt;
        ++found;
        Row r;
        for (const auto& e : aug[i])
            if (e.col >= n) r.push_back({e.col - n, e.val});
        inv.data_[static_cast<std::size_t>(piv[i])] = std::move(r);
    }
    if (found != n) return std::nullopt;
    return inv;
}

int Matrix::rank() const {
    std::vector<Row> rows = data_;
    auto piv = eliminate(rows, cols_);
    return static_cast<int>(std::count_if(piv.begin(), piv.end(), [](int p) { return p >= 0; }));
}

std::string Matrix::to_json() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) s += ",";
        s += "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) s += ",";
            s += "\"" + get(i, j).get_str() + "\"";
        }
        s += "]";
    }
    return s + "]";
}

std::string Matrix::str() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) s += ", ";
        s += "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) s += ", ";
            s += get(i, j).get_str();
        }
        s += "]";
    }
    return s + "]";
}

Matrix kron_identity(int n, const Matrix& m) {
    Matrix out(n * m.rows(), n * m.cols());
    for (int b = 0; b < n; ++b)
        for (int i = 0; i < m.rows(); ++i) {
            Matrix::Row r;
            r.reserve(m.row(i).size());
            for (const auto& [j, v] : m.row(i)) r.push_back({b * m.cols() + j, v});
            out.set_row(b * m.rows() + i, std::move(r));
        }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < b.rows(); ++k) {
            Matrix::Row r;
            for (const auto& [j, va] : a.row(i))
                for (const auto& [l, vb] : b.row(k)) r.push_back({j * b.cols() + l, va * vb});
            out.set_row(i * b.rows() + k, std::move(r));
        }
    return out;
}

Matrix hstack(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return {};
    int rows = blocks.front().rows(), cols = 0;
    for (const auto& b : blocks) {
        check_shape(b.rows() == rows, "hstack");
        cols += b.cols();
    }
    Matrix out(rows, cols);
    int c0 = 0;
    for (const auto& b : blocks) {
        out.put_block(0, c0, b);
        c0 += b.cols();
    }
    return out;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return {};
    int cols = blocks.front().cols(), rows = 0;
    for (const auto& b : blocks) {
        check_shape(b.cols() == cols, "vstack");
        rows += b.rows();
    }
    Matrix out(rows, cols);
    int r0 = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i) out.set_row(r0 + i, b.row(i));
        r0 += b.rows();
    }
    return out;
}

}  // namespace heis
