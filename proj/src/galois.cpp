#include "phodge/galois.hpp"

#include <algorithm>
#include <set>

namespace phodge {

GaloisShape::GaloisShape(std::vector<std::vector<int>> table, std::vector<int> inertia,
                         int omega, std::optional<std::vector<int>> deg)
    : table_(std::move(table)), inertia_(std::move(inertia)), omega_(omega) {
    const int n = static_cast<int>(table_.size());
    if (n < 1) throw ParseError("group table is empty");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n) throw ParseError("group table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw ParseError("group table entry out of range");
    }

    // Latin square: every row and column is a permutation.
    for (int g = 0; g < n; ++g) {
        std::vector<bool> seen_row(static_cast<std::size_t>(n), false);
        std::vector<bool> seen_col(static_cast<std::size_t>(n), false);
        for (int h = 0; h < n; ++h) {
            if (seen_row[static_cast<std::size_t>(mul(g, h))])
                throw ParseError("group table row has a repeat");
            seen_row[static_cast<std::size_t>(mul(g, h))] = true;
            if (seen_col[static_cast<std::size_t>(mul(h, g))])
                throw ParseError("group table column has a repeat");
            seen_col[static_cast<std::size_t>(mul(h, g))] = true;
        }
    }

    // two-sided identity
    identity_ = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int g = 0; g < n && ok; ++g)
            if (mul(e, g) != g || mul(g, e) != g) ok = false;
        if (ok) { identity_ = e; break; }
    }
    if (identity_ < 0) throw ParseError("group table has no identity");

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw ParseError("group table is not associative");

    inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (mul(g, h) == identity_ && mul(h, g) == identity_) inverse_[static_cast<std::size_t>(g)] = h;
    for (int g = 0; g < n; ++g)
        if (inverse_[static_cast<std::size_t>(g)] < 0) throw ParseError("group element has no inverse");

    // subgroup checks
    std::sort(inertia_.begin(), inertia_.end());
    inertia_.erase(std::unique(inertia_.begin(), inertia_.end()), inertia_.end());
    if (inertia_.empty()) throw ParseError("inertia list is empty");
    inertia_member_.assign(static_cast<std::size_t>(n), false);
    for (int g : inertia_) {
        if (g < 0 || g >= n) throw ParseError("inertia element out of range");
        inertia_member_[static_cast<std::size_t>(g)] = true;
    }
    if (!inertia_member_[static_cast<std::size_t>(identity_)])
        throw ParseError("inertia does not contain the identity");
    for (int a : inertia_)
        for (int b : inertia_)
            if (!inertia_member_[static_cast<std::size_t>(mul(a, b))])
                throw ParseError("inertia is not closed under multiplication");
    for (int a : inertia_)
        if (!inertia_member_[static_cast<std::size_t>(inverse(a))])
            throw ParseError("inertia is not closed under inverses");
    for (int g = 0; g < n; ++g)
        for (int a : inertia_)
            if (!inertia_member_[static_cast<std::size_t>(mul(mul(g, a), inverse(g)))])
                throw ParseError("inertia is not normal");

    if (omega_ < 0 || omega_ >= n) throw ParseError("omega out of range");
    if (n % static_cast<int>(inertia_.size()) != 0)
        throw ParseError("subgroup order does not divide group order");
    f_ = n / static_cast<int>(inertia_.size());

    // cosets of powers of omega must enumerate the quotient
    deg_.assign(static_cast<std::size_t>(n), -1);
    int w = identity_;
    for (int i = 0; i < f_; ++i) {
        for (int a : inertia_) {
            const int g = mul(a, w);
            if (deg_[static_cast<std::size_t>(g)] != -1)
                throw ParseError("omega image does not generate the quotient");
            deg_[static_cast<std::size_t>(g)] = i;
        }
        w = mul(w, omega_);
    }
    for (int g = 0; g < n; ++g)
        if (deg_[static_cast<std::size_t>(g)] < 0)
            throw ParseError("omega cosets do not cover the group");

    if (deg) {
        if (*deg != deg_) throw ParseError("supplied deg array disagrees with the factorization");
    }

    inertia_part_.assign(static_cast<std::size_t>(n), -1);
    for (int g = 0; g < n; ++g) {
        const int gp = mul(g, inverse(omega_pow(deg_[static_cast<std::size_t>(g)])));
        if (!inertia_member_[static_cast<std::size_t>(gp)])
            throw ParseError("factorization left the subgroup"); // unreachable for valid data
        inertia_part_[static_cast<std::size_t>(g)] = gp;
    }
}

int GaloisShape::omega_pow(int i) const {
    int w = identity_;
    for (int k = 0; k < i; ++k) w = mul(w, omega_);
    return w;
}

GaloisShape cyclic_shape(int n, int subgroup_gen) {
    if (n < 1) throw ParseError("cyclic order must be positive");
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    std::set<int> sub{0};
    int x = subgroup_gen % n;
    if (x < 0) x += n;
    int cur = x;
    while (sub.insert(cur).second) cur = (cur + x) % n;
    return GaloisShape(std::move(table), std::vector<int>(sub.begin(), sub.end()), 1 % n);
}

GaloisShape dihedral_shape(int n) {
    if (n < 1) throw ParseError("dihedral parameter must be positive");
    // ids: rotation r^i -> i, reflection r^i s -> n + i
    const int sz = 2 * n;
    auto id_of = [n](bool refl, int i) { return (refl ? n : 0) + ((i % n + n) % n); };
    std::vector<std::vector<int>> table(static_cast<std::size_t>(sz),
                                        std::vector<int>(static_cast<std::size_t>(sz)));
    for (int a = 0; a < sz; ++a)
        for (int b = 0; b < sz; ++b) {
            const bool ra = a >= n, rb = b >= n;
            const int ia = a % n, ib = b % n;
            // (r^ia s^ra)(r^ib s^rb) = r^(ia + ib or ia - ib) s^(ra xor rb)
            const int i = ra ? ia - ib : ia + ib;
            table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = id_of(ra != rb, i);
        }
    std::vector<int> rotations;
    for (int i = 0; i < n; ++i) rotations.push_back(i);
    return GaloisShape(std::move(table), std::move(rotations), n); // omega = s
}

GaloisShape product_cyclic_shape(int a, int b, std::vector<std::pair<int, int>> inertia_gens,
                                 std::pair<int, int> omega) {
    if (a < 1 || b < 1) throw ParseError("cyclic orders must be positive");
    for (const auto& [gx, gy] : inertia_gens)
        if (gx < 0 || gx >= a || gy < 0 || gy >= b)
            throw ParseError("subgroup generator out of range");
    if (omega.first < 0 || omega.first >= a || omega.second < 0 || omega.second >= b)
        throw ParseError("distinguished element out of range");
    const int sz = a * b;
    auto id_of = [a, b](int x, int y) { return ((x % a + a) % a) * b + ((y % b + b) % b); };
    std::vector<std::vector<int>> table(static_cast<std::size_t>(sz),
                                        std::vector<int>(static_cast<std::size_t>(sz)));
    for (int g = 0; g < sz; ++g)
        for (int h = 0; h < sz; ++h)
            table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] =
                id_of(g / b + h / b, g % b + h % b);
    std::set<int> sub{0};
    bool grew = true;
    while (grew) {
        grew = false;
        for (int s : std::vector<int>(sub.begin(), sub.end()))
            for (const auto& [gx, gy] : inertia_gens) {
                const int t = table[static_cast<std::size_t>(s)][static_cast<std::size_t>(id_of(gx, gy))];
                if (sub.insert(t).second) grew = true;
            }
    }
    return GaloisShape(std::move(table), std::vector<int>(sub.begin(), sub.end()),
                       id_of(omega.first, omega.second));
}

} // namespace phodge
