#pragma once

#include <string>
#include <vector>

#include "phodge/rational.hpp"

namespace phodge {

// Integer partition: weakly decreasing positive parts. The empty partition is a
// valid value (it labels the trivial functor) but some operations require parts.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);
    static Partition parse(const std::string& comma_separated);

    const std::vector<int>& parts() const { return parts_; }
    int rows() const { return static_cast<int>(parts_.size()); }
    int cols() const { return parts_.empty() ? 0 : parts_[0]; }
    int size() const; // number of cells
    int part(int i) const { return parts_[static_cast<std::size_t>(i)]; } // 0-based
    bool empty() const { return parts_.empty(); }
    bool is_rectangle() const;
    Partition conjugate() const;
    // length of column j (0-based): number of rows with at least j+1 cells
    int col_length(int j) const;

    std::string format() const;
    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator<(const Partition& o) const { return parts_ < o.parts_; }

private:
    std::vector<int> parts_;
};

// Threshold statistic: the smallest rank for which the distinguished tableau
// chain below exists. Equals rows(u), plus one when u is a nonempty rectangle.
int r_of(const Partition& u);

// Filling of a Young diagram with positive integers, stored row-major.
// Semistandardness (weak rows, strict columns) is a predicate, not an invariant:
// straightening intermediates are arbitrary fillings.
class Tableau {
public:
    Tableau(Partition shape, std::vector<std::vector<int>> rows);

    const Partition& shape() const { return shape_; }
    const std::vector<std::vector<int>>& row_data() const { return rows_; }
    int entry(int i, int j) const { return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    bool is_semistandard() const;
    std::vector<std::vector<int>> columns() const;
    // Reading word used for the plactic product: rows bottom to top, each row
    // left to right.
    std::vector<int> reading_word() const;
    // Row-major word (top to bottom); fixes the basis order.
    std::vector<int> row_major_word() const;
    std::vector<int> content_vector(int d) const;
    int max_entry() const;

    std::string format() const;
    bool operator==(const Tableau& o) const { return shape_ == o.shape_ && rows_ == o.rows_; }
    bool operator<(const Tableau& o) const;

private:
    Partition shape_;
    std::vector<std::vector<int>> rows_;
};

// All semistandard tableaux of the given shape with entries in {1,…,d}, ordered
// lexicographically by row-major reading word.
std::vector<Tableau> enumerate_tableaux(const Partition& u, int d);

// Hook-content product: the number of semistandard tableaux with entries ≤ d.
Int hook_content_count(const Partition& u, int d);

// Row i filled with value i.
Tableau superstandard_tableau(const Partition& u);

// T_1,…,T_d: T_1 superstandard; every value i < d is witnessed by a consecutive
// pair differing in exactly one cell holding i resp. i+1. Throws ChainUnavailable
// when d < r_of(u).
std::vector<Tableau> standard_chain(const Partition& u, int d);

// Schensted row insertion of a single value; returns the grown tableau.
Tableau row_insert(const Tableau& t, int value);

// Plactic product: insert the reading word of b into a.
Tableau plactic_product(const Tableau& a, const Tableau& b);

// Littlewood–Richardson coefficient c^u_{lambda,mu}, counted by pairs of
// semistandard tableaux whose plactic product is the superstandard tableau on u.
long lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& u);

// All partitions of n (ordered reverse-lexicographically, largest part first).
std::vector<Partition> partitions_of(int n);

} // namespace phodge
