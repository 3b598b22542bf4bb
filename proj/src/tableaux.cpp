#include "phodge/tableaux.hpp"

#include <algorithm>
#include <sstream>

#include "phodge/errors.hpp"

namespace phodge {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw BadShape("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw BadShape("partition parts must be weakly decreasing");
    }
}

Partition Partition::parse(const std::string& s) {
    std::vector<int> parts;
    std::string token;
    std::istringstream in(s);
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(token, &used);
            while (used < token.size() && (token[used] == ' ' || token[used] == '\t')) ++used;
            if (used != token.size()) throw std::invalid_argument(token);
            parts.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad partition token: '" + token + "'");
        }
    }
    if (parts.empty()) throw ParseError("empty partition literal");
    try {
        return Partition(std::move(parts));
    } catch (const BadShape& e) {
        throw ParseError(e.what());
    }
}

int Partition::size() const {
    int n = 0;
    for (int p : parts_) n += p;
    return n;
}

bool Partition::is_rectangle() const {
    if (parts_.empty()) return false;
    return parts_.front() == parts_.back();
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return Partition();
    std::vector<int> conj(static_cast<std::size_t>(parts_[0]), 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j) ++conj[static_cast<std::size_t>(j)];
    return Partition(std::move(conj));
}

int Partition::col_length(int j) const {
    int n = 0;
    for (int p : parts_)
        if (p > j) ++n;
    return n;
}

std::string Partition::format() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s;
}

int r_of(const Partition& u) {
    if (u.empty()) return 0;
    return u.rows() + (u.is_rectangle() ? 1 : 0);
}

Tableau::Tableau(Partition shape, std::vector<std::vector<int>> rows)
    : shape_(std::move(shape)), rows_(std::move(rows)) {
    if (rows_.size() != static_cast<std::size_t>(shape_.rows()))
        throw BadShape("tableau row count does not match shape");
    for (int i = 0; i < shape_.rows(); ++i) {
        if (rows_[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(shape_.part(i)))
            throw BadShape("tableau row length does not match shape");
        for (int v : rows_[static_cast<std::size_t>(i)])
            if (v < 1) throw BadShape("tableau entries must be positive");
    }
}

bool Tableau::is_semistandard() const {
    for (int i = 0; i < shape_.rows(); ++i)
        for (int j = 0; j < shape_.part(i); ++j) {
            if (j > 0 && entry(i, j) < entry(i, j - 1)) return false;
            if (i > 0 && shape_.part(i - 1) > j && entry(i, j) <= entry(i - 1, j)) return false;
        }
    return true;
}

std::vector<std::vector<int>> Tableau::columns() const {
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(shape_.cols()));
    for (int i = 0; i < shape_.rows(); ++i)
        for (int j = 0; j < shape_.part(i); ++j)
            cols[static_cast<std::size_t>(j)].push_back(entry(i, j));
    return cols;
}

std::vector<int> Tableau::reading_word() const {
    std::vector<int> w;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it)
        w.insert(w.end(), it->begin(), it->end());
    return w;
}

std::vector<int> Tableau::row_major_word() const {
    std::vector<int> w;
    for (const auto& r : rows_) w.insert(w.end(), r.begin(), r.end());
    return w;
}

std::vector<int> Tableau::content_vector(int d) const {
    std::vector<int> m(static_cast<std::size_t>(d), 0);
    for (const auto& r : rows_)
        for (int v : r) {
            if (v > d) throw BadShape("tableau entry exceeds rank");
            ++m[static_cast<std::size_t>(v - 1)];
        }
    return m;
}

int Tableau::max_entry() const {
    int m = 0;
    for (const auto& r : rows_)
        for (int v : r) m = std::max(m, v);
    return m;
}

std::string Tableau::format() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) s += ",";
        s += "[";
        for (std::size_t j = 0; j < rows_[i].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(rows_[i][j]);
        }
        s += "]";
    }
    return s + "]";
}

bool Tableau::operator<(const Tableau& o) const {
    if (!(shape_ == o.shape_)) return shape_ < o.shape_;
    return row_major_word() < o.row_major_word();
}

namespace {

void enumerate_rec(const Partition& u, int d, int i, int j,
                   std::vector<std::vector<int>>& rows, std::vector<Tableau>& out) {
    if (i == u.rows()) {
        out.emplace_back(u, rows);
        return;
    }
    int ni = i, nj = j + 1;
    if (nj == u.part(i)) { ni = i + 1; nj = 0; }
    int lo = 1;
    if (j > 0) lo = std::max(lo, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)]);
    if (i > 0 && u.part(i - 1) > j)
        lo = std::max(lo, rows[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + 1);
    for (int v = lo; v <= d; ++v) {
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        enumerate_rec(u, d, ni, nj, rows, out);
    }
}

} // namespace

std::vector<Tableau> enumerate_tableaux(const Partition& u, int d) {
    if (d < 1) throw BadShape("rank must be positive");
    std::vector<Tableau> out;
    if (u.empty()) {
        out.emplace_back(u, std::vector<std::vector<int>>{});
        return out;
    }
    if (u.rows() > d) return out; // first column cannot be strictly increasing
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < u.rows(); ++i)
        rows.emplace_back(static_cast<std::size_t>(u.part(i)), 0);
    enumerate_rec(u, d, 0, 0, rows, out);
    return out;
}

Int hook_content_count(const Partition& u, int d) {
    if (u.empty()) return 1;
    Partition conj = u.conjugate();
    Rational acc = 1;
    for (int i = 0; i < u.rows(); ++i)
        for (int j = 0; j < u.part(i); ++j) {
            int content = j - i;
            int hook = (u.part(i) - j) + (conj.part(j) - i) - 1;
            acc *= Rational(d + content, hook);
        }
    if (!is_integer(acc)) throw BadShape("hook-content product is not an integer");
    return num(acc);
}

Tableau superstandard_tableau(const Partition& u) {
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < u.rows(); ++i)
        rows.emplace_back(static_cast<std::size_t>(u.part(i)), i + 1);
    return Tableau(u, std::move(rows));
}

std::vector<Tableau> standard_chain(const Partition& u, int d) {
    if (u.empty()) throw BadShape("chain needs a nonempty shape");
    if (d < r_of(u))
        throw ChainUnavailable("rank " + std::to_string(d) + " below threshold " +
                               std::to_string(r_of(u)) + " for shape " + u.format());
    std::vector<Tableau> chain;
    chain.push_back(superstandard_tableau(u));
    const int last_col = u.cols() - 1;
    const int nu = u.col_length(last_col); // length of the right-most column
    auto rows = chain.back().row_data();
    // walk the bottom cell of the right-most column up to d, one value per step
    for (int v = nu + 1; v <= d; ++v) {
        rows[static_cast<std::size_t>(nu - 1)][static_cast<std::size_t>(last_col)] = v;
        chain.emplace_back(u, rows);
    }
    // then bump each higher cell of that column once: k -> k+1, bottom-up
    for (int k = nu - 1; k >= 1; --k) {
        rows[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(last_col)] = k + 1;
        chain.emplace_back(u, rows);
    }
    return chain;
}

Tableau row_insert(const Tableau& t, int value) {
    auto rows = t.row_data();
    int v = value;
    std::size_t i = 0;
    for (;; ++i) {
        if (i == rows.size()) {
            rows.push_back({v});
            break;
        }
        auto& row = rows[i];
        auto it = std::upper_bound(row.begin(), row.end(), v);
        if (it == row.end()) {
            row.push_back(v);
            break;
        }
        std::swap(*it, v);
    }
    std::vector<int> parts;
    for (const auto& r : rows) parts.push_back(static_cast<int>(r.size()));
    return Tableau(Partition(std::move(parts)), std::move(rows));
}

Tableau plactic_product(const Tableau& a, const Tableau& b) {
    Tableau acc = a;
    for (int v : b.reading_word()) acc = row_insert(acc, v);
    return acc;
}

long lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& u) {
    if (lambda.size() + mu.size() != u.size()) return 0;
    if (u.empty()) return 1;
    const int r = u.rows();
    if (lambda.rows() > r || mu.rows() > r) return 0;
    const Tableau target = superstandard_tableau(u);
    std::vector<int> want = target.content_vector(r);
    long count = 0;
    for (const Tableau& p : enumerate_tableaux(lambda, r)) {
        std::vector<int> cp = p.content_vector(r);
        bool feasible = true;
        for (int i = 0; i < r; ++i)
            if (cp[static_cast<std::size_t>(i)] > want[static_cast<std::size_t>(i)]) { feasible = false; break; }
        if (!feasible) continue;
        for (const Tableau& q : enumerate_tableaux(mu, r)) {
            std::vector<int> cq = q.content_vector(r);
            bool match = true;
            for (int i = 0; i < r; ++i)
                if (cp[static_cast<std::size_t>(i)] + cq[static_cast<std::size_t>(i)] != want[static_cast<std::size_t>(i)]) {
                    match = false;
                    break;
                }
            if (!match) continue;
            if (plactic_product(p, q) == target) ++count;
        }
    }
    return count;
}

namespace {
void partitions_rec(int n, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw BadShape("partition size must be non-negative");
    std::vector<Partition> out;
    std::vector<int> cur;
    partitions_rec(n, n == 0 ? 1 : n, cur, out);
    return out;
}

} // namespace phodge
