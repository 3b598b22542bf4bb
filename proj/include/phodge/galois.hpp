#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phodge/errors.hpp"

namespace phodge {

// A finite group with a distinguished normal subgroup ("inertia") whose
// quotient is cyclic of order f, generated by the image of a distinguished
// element omega. Every element factors uniquely as g = g' * omega^deg(g) with
// g' in the subgroup and 0 <= deg(g) < f.
//
// Elements are ids 0..size-1; table[g][h] is the product g*h. Construction
// validates the full group axioms (the table sizes stay small enough for the
// cubic associativity sweep), subgroup normality, and the cyclic-quotient
// requirement; a supplied deg array is checked against the computed one.
class GaloisShape {
public:
    GaloisShape(std::vector<std::vector<int>> table, std::vector<int> inertia, int omega,
                std::optional<std::vector<int>> deg = std::nullopt);

    int size() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int mul(int g, int h) const { return table_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
    int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
    int omega() const { return omega_; }
    int f() const { return f_; }
    const std::vector<int>& inertia() const { return inertia_; }
    bool in_inertia(int g) const { return inertia_member_[static_cast<std::size_t>(g)]; }
    int deg(int g) const { return deg_[static_cast<std::size_t>(g)]; }
    // the subgroup factor g' in g = g' * omega^deg(g)
    int inertia_part(int g) const { return inertia_part_[static_cast<std::size_t>(g)]; }
    int omega_pow(int i) const;
    int conj_by_omega(int g) const { return mul(mul(omega_, g), inverse(omega_)); }

    const std::vector<std::vector<int>>& table() const { return table_; }

    friend bool operator==(const GaloisShape& a, const GaloisShape& b) {
        return a.table_ == b.table_ && a.inertia_ == b.inertia_ && a.omega_ == b.omega_;
    }

private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inertia_;            // sorted ids
    std::vector<bool> inertia_member_;
    int omega_ = 0;
    int f_ = 1;
    int identity_ = 0;
    std::vector<int> inverse_;
    std::vector<int> deg_;
    std::vector<int> inertia_part_;
};

// Z_n with the subgroup generated by `subgroup_gen` and omega = 1.
GaloisShape cyclic_shape(int n, int subgroup_gen);

// Dihedral group of order 2n: rotations form the subgroup, a reflection is omega.
GaloisShape dihedral_shape(int n);

// Z_a x Z_b with the subgroup generated by the given pairs and the given omega.
GaloisShape product_cyclic_shape(int a, int b, std::vector<std::pair<int, int>> inertia_gens,
                                 std::pair<int, int> omega);

} // namespace phodge
