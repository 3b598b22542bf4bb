#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "phodge/scalar.hpp"

namespace phodge {

// Dense row-major matrix over an exact scalar S. Scalars carry their parent
// algebra, so empty matrices cannot manufacture elements; factories therefore
// take an exemplar scalar of the intended parent.
template <class S>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const S& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<S> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows * cols)
            throw DimensionMismatch("matrix data size does not match shape");
    }

    static Matrix zeros(std::size_t rows, std::size_t cols, const S& exemplar) {
        return Matrix(rows, cols, scalar_zero(exemplar));
    }
    static Matrix identity(std::size_t n, const S& exemplar) {
        Matrix m = zeros(n, n, exemplar);
        const S one = scalar_one(exemplar);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    const S& exemplar() const {
        if (data_.empty()) throw DimensionMismatch("empty matrix has no exemplar");
        return data_[0];
    }

    S& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<S>& data() const { return data_; }

    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const {
        for (const auto& x : data_)
            if (!scalar_is_zero(x)) return false;
        return true;
    }
    bool is_identity() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                if (i == j ? !scalar_is_one(at(i, j)) : !scalar_is_zero(at(i, j)))
                    return false;
            }
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            if (!(a.data_[k] == b.data_[k])) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_shape(b);
        Matrix out = a;
        for (std::size_t k = 0; k < out.data_.size(); ++k)
            out.data_[k] = out.data_[k] + b.data_[k];
        return out;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_shape(b);
        Matrix out = a;
        for (std::size_t k = 0; k < out.data_.size(); ++k)
            out.data_[k] = out.data_[k] - b.data_[k];
        return out;
    }
    Matrix operator-() const {
        Matrix out = *this;
        for (auto& x : out.data_) x = -x;
        return out;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("matrix product shape mismatch");
        if (a.empty() || b.empty()) {
            if (a.rows_ == 0 || b.cols_ == 0) return Matrix(a.rows_, b.cols_, std::vector<S>{});
            // inner dimension 0 with nonzero outer shape cannot build elements
            throw DimensionMismatch("product over empty inner dimension needs an exemplar");
        }
        Matrix out = zeros(a.rows_, b.cols_, a.exemplar());
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (scalar_is_zero(a.at(i, k))) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out.at(i, j) = out.at(i, j) + a.at(i, k) * b.at(k, j);
            }
        return out;
    }
    friend Matrix operator*(const S& s, const Matrix& a) {
        Matrix out = a;
        for (auto& x : out.data_) x = s * x;
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_, data_.empty() ? std::vector<S>{} : std::vector<S>(data_.size(), data_[0]));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    Matrix pow(unsigned long e) const {
        if (!is_square()) throw DimensionMismatch("power of non-square matrix");
        Matrix acc = identity(rows_, exemplar());
        Matrix b = *this;
        while (e) {
            if (e & 1) acc = acc * b;
            b = b * b;
            e >>= 1;
        }
        return acc;
    }

    template <class T>
    Matrix<T> map(const std::function<T(const S&)>& fn) const {
        std::vector<T> out;
        out.reserve(data_.size());
        for (const auto& x : data_) out.push_back(fn(x));
        return Matrix<T>(rows_, cols_, std::move(out));
    }

private:
    void check_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("matrix shape mismatch");
    }
    std::size_t rows_, cols_;
    std::vector<S> data_;
};

template <class S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.empty() || b.empty())
        return Matrix<S>(a.rows() * b.rows(), a.cols() * b.cols(), std::vector<S>{});
    Matrix<S> out = Matrix<S>::zeros(a.rows() * b.rows(), a.cols() * b.cols(), a.exemplar());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (scalar_is_zero(a.at(i, j))) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

// --- elimination -------------------------------------------------------------

// Row-reduce in place to reduced echelon form using invertible pivots only.
// Over a field every nonzero entry is a unit and this is plain Gauss-Jordan.
// Over a ring with zero divisors, when no single entry in the pivot column is a
// unit we try adding one lower row to another to create one (this resolves
// complementary-idempotent situations); if that also fails the column is either
// all zero divisors (throw ZeroDivisorPivot) or treated as pivot-free.
// Returns pivot column indices; `companion` (if given) receives the same row
// operations, which turns [A | I] into [RREF | T] with T*A = RREF.
template <class S>
std::vector<std::size_t> row_reduce(Matrix<S>& m, Matrix<S>* companion = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    auto apply = [&](auto&& op) {
        op(m);
        if (companion) op(*companion);
    };
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        // find a unit pivot at or below `row`
        std::optional<std::size_t> unit_row;
        bool column_has_nonzero = false;
        for (std::size_t i = row; i < m.rows(); ++i) {
            if (scalar_is_zero(m.at(i, col))) continue;
            column_has_nonzero = true;
            if (scalar_try_invert(m.at(i, col))) { unit_row = i; break; }
        }
        if (!unit_row && column_has_nonzero) {
            // try to build a unit by adding one row into another
            for (std::size_t i = row; i < m.rows() && !unit_row; ++i)
                for (std::size_t j = row; j < m.rows() && !unit_row; ++j) {
                    if (i == j) continue;
                    S cand = m.at(i, col) + m.at(j, col);
                    if (scalar_try_invert(cand)) {
                        apply([&](Matrix<S>& x) {
                            for (std::size_t c = 0; c < x.cols(); ++c)
                                x.at(i, c) = x.at(i, c) + x.at(j, c);
                        });
                        unit_row = i;
                    }
                }
            if (!unit_row)
                throw ZeroDivisorPivot("column of zero divisors at index " + std::to_string(col));
        }
        if (!unit_row) continue; // column already clear below `row`
        if (*unit_row != row) {
            std::size_t a = *unit_row, b = row;
            apply([&](Matrix<S>& x) {
                for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x.at(a, c), x.at(b, c));
            });
        }
        S inv = scalar_invert(m.at(row, col));
        apply([&](Matrix<S>& x) {
            for (std::size_t c = 0; c < x.cols(); ++c) x.at(row, c) = inv * x.at(row, c);
        });
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || scalar_is_zero(m.at(i, col))) continue;
            S factor = m.at(i, col);
            apply([&](Matrix<S>& x) {
                for (std::size_t c = 0; c < x.cols(); ++c)
                    x.at(i, c) = x.at(i, c) - factor * x.at(row, c);
            });
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class S>
std::size_t rank(const Matrix<S>& m) {
    if (m.empty()) return 0;
    Matrix<S> work = m;
    return row_reduce(work).size();
}

// Basis of the right kernel, one column vector per free column.
template <class S>
std::vector<std::vector<S>> kernel_basis(const Matrix<S>& m) {
    if (m.cols() == 0) return {};
    if (m.rows() == 0 || m.is_zero()) {
        // entire space; need an exemplar to build vectors
        const S ex = m.empty() ? throw DimensionMismatch("kernel of 0x0 needs entries") : m.exemplar();
        std::vector<std::vector<S>> basis;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::vector<S> v(m.cols(), scalar_zero(ex));
            v[j] = scalar_one(ex);
            basis.push_back(std::move(v));
        }
        return basis;
    }
    Matrix<S> work = m;
    auto pivots = row_reduce(work);
    const S ex = m.exemplar();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<S>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<S> v(m.cols(), scalar_zero(ex));
        v[free_col] = scalar_one(ex);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -work.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class S>
std::optional<Matrix<S>> try_inverse(const Matrix<S>& m) {
    if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
    if (m.rows() == 0) return m;
    Matrix<S> work = m;
    Matrix<S> companion = Matrix<S>::identity(m.rows(), m.exemplar());
    auto pivots = row_reduce(work, &companion);
    if (pivots.size() != m.rows()) return std::nullopt;
    return companion;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
    auto r = try_inverse(m);
    if (!r) throw NotAUnit("matrix is not invertible");
    return *r;
}

// Solve m * x = b (single right-hand side); nullopt when inconsistent.
template <class S>
std::optional<std::vector<S>> solve(const Matrix<S>& m, const std::vector<S>& b) {
    if (b.size() != m.rows()) throw DimensionMismatch("rhs length mismatch");
    if (m.rows() == 0) return std::vector<S>{};
    const S ex = m.empty() ? b.at(0) : m.exemplar();
    Matrix<S> aug = Matrix<S>::zeros(m.rows(), m.cols() + 1, ex);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt; // 0 = 1 row
    std::vector<S> x(m.cols(), scalar_zero(ex));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols());
    return x;
}

// Multiplicities of Jordan block sizes of a nilpotent map, from the rank
// sequence of its powers: mult(s) = r_{s-1} - 2 r_s + r_{s+1} with r_0 = n.
// Returns {size -> multiplicity} with only positive multiplicities kept.
template <class S>
std::map<std::size_t, std::size_t> nilpotent_block_structure(const Matrix<S>& m) {
    if (!m.is_square()) throw DimensionMismatch("block structure of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return {};
    std::vector<std::size_t> r; // r[k] = rank(m^k)
    r.push_back(n);
    Matrix<S> p = m;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) p = p * m;
        r.push_back(rank(p));
        if (r.back() == 0) break;
    }
    if (r.back() != 0) throw NotNilpotent("matrix power did not vanish");
    while (r.size() < n + 2) r.push_back(0);
    std::map<std::size_t, std::size_t> blocks;
    for (std::size_t s = 1; s <= n; ++s) {
        // guaranteed non-negative for genuine rank sequences
        std::size_t mult = r[s - 1] + r[s + 1] - 2 * r[s];
        if (mult > 0) blocks[s] = mult;
    }
    return blocks;
}

} // namespace phodge
