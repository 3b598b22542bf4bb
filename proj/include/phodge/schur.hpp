#pragma once

#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "phodge/matrix.hpp"
#include "phodge/tableaux.hpp"

namespace phodge {

// Length of the right-most column of the diagram.
inline int nu_rightmost(const Partition& u) {
    if (u.empty()) throw BadShape("empty shape has no columns");
    return u.col_length(u.cols() - 1);
}

class SchurSpace;

// Element of the Schur space in the semistandard-tableau basis, rational coords.
struct SchurVector {
    const SchurSpace* space;
    std::vector<Rational> coords;
};

// The functor attached to a partition, realized on a rank-d free module as the
// quotient of the column-wise exterior-power tensor product. Basis vectors e_T
// are indexed by semistandard tableaux in enumeration order; arbitrary fillings
// are expanded through Garnir straightening, memoized by column words.
//
// Sign convention: wedge slots are ordered by columns left to right, entries top
// to bottom; semistandard fillings get coefficient +1.
class SchurSpace {
public:
    using Sparse = std::map<std::size_t, Rational>;

    SchurSpace(Partition shape, int rank)
        : shape_(std::move(shape)), rank_(rank), basis_(enumerate_tableaux(shape_, rank_)) {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            index_[basis_[i].row_major_word()] = i;
        col_shape_.clear();
        for (int j = 0; j < shape_.cols(); ++j) col_shape_.push_back(shape_.col_length(j));
    }

    const Partition& shape() const { return shape_; }
    int rank() const { return rank_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Tableau>& basis() const { return basis_; }
    const Tableau& basis_at(std::size_t i) const { return basis_[i]; }

    std::size_t index_of(const Tableau& t) const {
        auto it = index_.find(t.row_major_word());
        if (it == index_.end())
            throw BadShape("tableau is not a basis element: " + t.format());
        return it->second;
    }

    // Expansion of the wedge-tensor element attached to an arbitrary filling,
    // given by columns (top to bottom). Columns with repeats vanish.
    Sparse straighten_columns(const std::vector<std::vector<int>>& cols) const {
        validate_columns(cols);
        std::vector<std::vector<int>> sorted = cols;
        int sign = normalize_columns(sorted);
        if (sign == 0) return {};
        Sparse base = straighten_sorted(sorted, 0);
        if (sign == 1) return base;
        for (auto& [k, v] : base) v = -v;
        return base;
    }

    SchurVector straighten(const Tableau& filling) const {
        if (!(filling.shape() == shape_))
            throw BadShape("filling shape mismatch");
        Sparse s = straighten_columns(filling.columns());
        SchurVector v{this, std::vector<Rational>(dim(), Rational(0))};
        for (const auto& [i, c] : s) v.coords[i] = c;
        return v;
    }

private:
    void validate_columns(const std::vector<std::vector<int>>& cols) const {
        if (cols.size() != col_shape_.size())
            throw BadShape("filling has wrong number of columns");
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (static_cast<int>(cols[j].size()) != col_shape_[j])
                throw BadShape("filling column length mismatch");
            for (int v : cols[j])
                if (v < 1 || v > rank_) throw BadShape("filling entry out of range");
        }
    }

    // Sort columns ascending; return the combined permutation sign, or 0 when a
    // column has a repeated entry (the wedge vanishes).
    static int normalize_columns(std::vector<std::vector<int>>& cols) {
        int sign = 1;
        for (auto& col : cols) {
            // insertion sort, counting swaps
            for (std::size_t a = 1; a < col.size(); ++a)
                for (std::size_t b = a; b > 0 && col[b] < col[b - 1]; --b) {
                    std::swap(col[b], col[b - 1]);
                    sign = -sign;
                }
            for (std::size_t a = 1; a < col.size(); ++a)
                if (col[a] == col[a - 1]) return 0;
        }
        return sign;
    }

    static std::string column_key(const std::vector<std::vector<int>>& cols) {
        std::string key;
        for (const auto& col : cols) {
            for (int v : col) {
                key += std::to_string(v);
                key += ',';
            }
            key += '|';
        }
        return key;
    }

    static int word_sign(const std::vector<int>& w) {
        int inv = 0;
        for (std::size_t a = 0; a < w.size(); ++a)
            for (std::size_t b = a + 1; b < w.size(); ++b)
                if (w[a] > w[b]) ++inv;
        return (inv % 2 == 0) ? 1 : -1;
    }

    // cols are column-strict (each strictly increasing). Either the filling is
    // semistandard (a basis vector) or the leftmost violated column pair yields
    // a Garnir exchange; every exchange term strictly lowers the value-sum of
    // the violated column while fixing everything to its left, so the
    // lexicographic measure proves termination.
    Sparse straighten_sorted(const std::vector<std::vector<int>>& cols, int depth) const {
        if (depth > 128) throw BadShape("straightening recursion too deep");
        const std::string key = column_key(cols);
        {
            std::lock_guard<std::mutex> lock(memo_mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }

        // locate a violation: row i with cols[j][i] > cols[j+1][i]
        std::size_t vi = 0, vj = 0;
        bool found = false;
        for (std::size_t j = 0; j + 1 < cols.size() && !found; ++j)
            for (std::size_t i = 0; i < cols[j + 1].size() && !found; ++i)
                if (cols[j][i] > cols[j + 1][i]) { vi = i; vj = j; found = true; }

        Sparse result;
        if (!found) {
            // semistandard: rows weakly increase because no adjacent pair violates
            std::vector<std::vector<int>> rows(static_cast<std::size_t>(shape_.rows()));
            for (int i = 0; i < shape_.rows(); ++i)
                for (int j = 0; j < shape_.part(i); ++j)
                    rows[static_cast<std::size_t>(i)].push_back(cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            result[index_of(Tableau(shape_, std::move(rows)))] = 1;
        } else {
            // Garnir exchange between the bottom of column vj (from row vi) and
            // the top of column vj+1 (through row vi). All of B is below all of
            // A in value, so the union is a strictly sorted set of size |A|+|B|.
            std::vector<int> A(cols[vj].begin() + static_cast<long>(vi), cols[vj].end());
            std::vector<int> B(cols[vj + 1].begin(), cols[vj + 1].begin() + static_cast<long>(vi) + 1);
            std::vector<int> all = B;
            all.insert(all.end(), A.begin(), A.end()); // already ascending
            const std::size_t na = A.size(), total = all.size();

            // reference sign of the original splitting (A in column vj slots,
            // B in column vj+1 slots: slot word = A then B)
            std::vector<int> orig_word = A;
            orig_word.insert(orig_word.end(), B.begin(), B.end());
            const int orig_sign = word_sign(orig_word);

            // enumerate |A|-subsets of the union as the new column-vj tail
            std::vector<std::size_t> pick(na);
            for (std::size_t k = 0; k < na; ++k) pick[k] = k;
            auto advance = [&]() -> bool {
                std::size_t k = na;
                while (k > 0) {
                    --k;
                    if (pick[k] + (na - k) < total) {
                        ++pick[k];
                        for (std::size_t l = k + 1; l < na; ++l) pick[l] = pick[l - 1] + 1;
                        return true;
                    }
                }
                return false;
            };
            do {
                std::vector<int> X, Y;
                std::vector<bool> chosen(total, false);
                for (auto idx : pick) chosen[idx] = true;
                for (std::size_t k = 0; k < total; ++k)
                    (chosen[k] ? X : Y).push_back(all[k]);
                if (X == A) continue;
                std::vector<int> word = X;
                word.insert(word.end(), Y.begin(), Y.end());
                const int split_sign = word_sign(word);

                std::vector<std::vector<int>> next = cols;
                next[vj].assign(cols[vj].begin(), cols[vj].begin() + static_cast<long>(vi));
                next[vj].insert(next[vj].end(), X.begin(), X.end());
                next[vj + 1] = Y;
                next[vj + 1].insert(next[vj + 1].end(), cols[vj + 1].begin() + static_cast<long>(vi) + 1,
                                    cols[vj + 1].end());
                int seam_sign = normalize_columns(next);
                if (seam_sign == 0) continue;
                const Rational coeff = Rational(-1) * orig_sign * split_sign * seam_sign;
                for (const auto& [idx, c] : straighten_sorted(next, depth + 1)) {
                    Rational& slot = result[idx];
                    slot += coeff * c;
                    if (slot == 0) result.erase(idx);
                }
            } while (advance());
        }

        std::lock_guard<std::mutex> lock(memo_mu_);
        auto [it, inserted] = memo_.emplace(key, std::move(result));
        return it->second;
    }

    Partition shape_;
    int rank_;
    std::vector<Tableau> basis_;
    std::map<std::vector<int>, std::size_t> index_;
    std::vector<int> col_shape_;
    mutable std::unordered_map<std::string, Sparse> memo_;
    mutable std::mutex memo_mu_;
};

// Image of the basis wedge e_col under A applied to every factor, expanded over
// sorted index subsets with signs folded in. Entries are 1-based values.
template <class S>
std::vector<std::pair<std::vector<int>, S>> wedge_image(const Matrix<S>& A,
                                                        const std::vector<int>& col) {
    const int d = static_cast<int>(A.rows());
    const S one = scalar_one(A.exemplar());
    std::map<std::vector<int>, S> acc;
    acc.emplace(std::vector<int>{}, one);
    for (int v : col) {
        std::map<std::vector<int>, S> next;
        for (const auto& [subset, coeff] : acc) {
            for (int k = 1; k <= d; ++k) {
                const S& a = A.at(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(v - 1));
                if (scalar_is_zero(a)) continue;
                bool dup = false;
                std::size_t pos = 0;
                for (int s : subset) {
                    if (s == k) { dup = true; break; }
                    if (s < k) ++pos;
                }
                if (dup) continue;
                std::vector<int> grown = subset;
                grown.insert(grown.begin() + static_cast<long>(pos), k);
                // the new factor sits at the end; moving it to `pos` hops over
                // (|subset| - pos) existing factors
                const bool flip = ((subset.size() - pos) % 2) != 0;
                S term = coeff * a;
                if (flip) term = -term;
                auto it = next.find(grown);
                if (it == next.end()) next.emplace(std::move(grown), std::move(term));
                else it->second = it->second + term;
            }
        }
        // drop exact zeros to keep the cross product small
        for (auto it = next.begin(); it != next.end();) {
            if (scalar_is_zero(it->second)) it = next.erase(it);
            else ++it;
        }
        acc = std::move(next);
    }
    std::vector<std::pair<std::vector<int>, S>> out;
    out.reserve(acc.size());
    for (auto& [k, v] : acc) out.emplace_back(k, std::move(v));
    return out;
}

// Matrix of the functor applied to A, in the semistandard basis of sp.
template <class S>
Matrix<S> schur_matrix(const Matrix<S>& A, const SchurSpace& sp) {
    if (!A.is_square()) throw DimensionMismatch("schur matrix needs a square input");
    if (static_cast<int>(A.rows()) != sp.rank())
        throw DimensionMismatch("input size does not match the space rank");
    const std::size_t n = sp.dim();
    if (n == 0) return Matrix<S>(0, 0, std::vector<S>{});
    Matrix<S> out = Matrix<S>::zeros(n, n, A.exemplar());
    const S one = scalar_one(A.exemplar());
    for (std::size_t bi = 0; bi < n; ++bi) {
        const auto cols = sp.basis_at(bi).columns();
        // cross product of per-column wedge expansions
        std::vector<std::pair<std::vector<std::vector<int>>, S>> partial;
        partial.emplace_back(std::vector<std::vector<int>>{}, one);
        for (const auto& col : cols) {
            auto w = wedge_image(A, col);
            std::vector<std::pair<std::vector<std::vector<int>>, S>> grown;
            grown.reserve(partial.size() * w.size());
            for (const auto& [fill, coeff] : partial)
                for (const auto& [subset, wc] : w) {
                    auto f2 = fill;
                    f2.push_back(subset);
                    grown.emplace_back(std::move(f2), coeff * wc);
                }
            partial = std::move(grown);
        }
        for (const auto& [fill, coeff] : partial) {
            for (const auto& [idx, rat] : sp.straighten_columns(fill)) {
                S term = coeff * scalar_from_rational(A.exemplar(), rat);
                out.at(idx, bi) = out.at(idx, bi) + term;
            }
        }
    }
    return out;
}

// Matrix of the derivation (Lie-algebra) action induced by Theta: sum over cells
// of Theta applied in a single slot, straightened.
template <class S>
Matrix<S> schur_derivation(const Matrix<S>& theta, const SchurSpace& sp) {
    if (!theta.is_square()) throw DimensionMismatch("derivation needs a square input");
    if (static_cast<int>(theta.rows()) != sp.rank())
        throw DimensionMismatch("input size does not match the space rank");
    const std::size_t n = sp.dim();
    if (n == 0) return Matrix<S>(0, 0, std::vector<S>{});
    Matrix<S> out = Matrix<S>::zeros(n, n, theta.exemplar());
    const int d = sp.rank();
    for (std::size_t bi = 0; bi < n; ++bi) {
        const auto cols = sp.basis_at(bi).columns();
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < cols[j].size(); ++i) {
                const int t = cols[j][i];
                for (int k = 1; k <= d; ++k) {
                    const S& c = theta.at(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(t - 1));
                    if (scalar_is_zero(c)) continue;
                    auto fill = cols;
                    fill[j][i] = k;
                    for (const auto& [idx, rat] : sp.straighten_columns(fill)) {
                        S term = c * scalar_from_rational(theta.exemplar(), rat);
                        out.at(idx, bi) = out.at(idx, bi) + term;
                    }
                }
            }
    }
    return out;
}

} // namespace phodge
