#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phodge/algebra.hpp"
#include "phodge/schur.hpp"

namespace phodge {

// Classification data for a semilinear operator: a multiset of Jordan-type
// blocks (weight, nilpotent depth). Two flavors share the calculus:
//   HodgeTate — weights compared on the nose;
//   DeRham    — only the weight class mod Z matters; rational representatives
//               are normalized into [0,1).
enum class Flavor { HodgeTate, DeRham };

inline const char* flavor_name(Flavor f) { return f == Flavor::HodgeTate ? "HT" : "dR"; }

// Integer shifts move only the constant coordinate, so subtracting its floor
// puts every weight class into a canonical representative (constant coordinate
// in [0,1)); plain rationals land on their fractional part.
template <class W>
W normalize_weight(Flavor f, const W& w) {
    if (f != Flavor::DeRham) return w;
    const Rational shift(rational_floor(scalar_flatten(w)[0]));
    if (shift == 0) return w;
    return w - scalar_from_rational(w, shift);
}

template <class W>
struct ClassBlock {
    W weight;
    int depth = 0; // block dimension is depth + 1

    friend bool operator==(const ClassBlock& a, const ClassBlock& b) {
        return a.depth == b.depth && a.weight == b.weight;
    }
};

template <class W>
class ClassData {
public:
    ClassData(Flavor flavor, std::vector<ClassBlock<W>> blocks)
        : flavor_(flavor), blocks_(std::move(blocks)) {
        if (blocks_.empty())
            throw DimensionMismatch("class data needs at least one block");
        for (auto& b : blocks_) {
            if (b.depth < 0) throw DimensionMismatch("block depth must be nonnegative");
            b.weight = normalize_weight(flavor_, b.weight);
        }
        std::sort(blocks_.begin(), blocks_.end(), [](const ClassBlock<W>& a, const ClassBlock<W>& b) {
            const auto fa = scalar_flatten(a.weight), fb = scalar_flatten(b.weight);
            if (fa != fb)
                return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end());
            return a.depth < b.depth;
        });
    }

    Flavor flavor() const { return flavor_; }
    const std::vector<ClassBlock<W>>& blocks() const { return blocks_; }

    int rank() const {
        int r = 0;
        for (const auto& b : blocks_) r += b.depth + 1;
        return r;
    }

    // Weight multiset: each block contributes its weight with multiplicity depth+1.
    std::vector<W> weights() const {
        std::vector<W> out;
        for (const auto& b : blocks_)
            for (int k = 0; k <= b.depth; ++k) out.push_back(b.weight);
        return out;
    }

    friend bool operator==(const ClassData& a, const ClassData& b) {
        return a.flavor_ == b.flavor_ && a.blocks_ == b.blocks_;
    }

private:
    Flavor flavor_;
    std::vector<ClassBlock<W>> blocks_;
};

// --- predicates --------------------------------------------------------------

template <class W>
bool is_semisimple(const ClassData<W>& a) {
    for (const auto& b : a.blocks())
        if (b.depth != 0) return false;
    return true;
}

template <class W>
bool is_hodge_tate(const ClassData<W>& a) {
    if (a.flavor() != Flavor::HodgeTate)
        throw FlavorMismatch("predicate needs HT-flavored data");
    for (const auto& b : a.blocks())
        if (b.depth != 0 || !scalar_is_integer(b.weight)) return false;
    return true;
}

template <class W>
bool is_de_rham(const ClassData<W>& a) {
    if (a.flavor() != Flavor::DeRham)
        throw FlavorMismatch("predicate needs dR-flavored data");
    for (const auto& b : a.blocks())
        if (b.depth != 0 || !scalar_is_integer(b.weight)) return false;
    return true;
}

// --- basic constructions ------------------------------------------------------

template <class W>
ClassData<W> class_direct_sum(const ClassData<W>& a, const ClassData<W>& b) {
    if (a.flavor() != b.flavor()) throw FlavorMismatch("direct sum needs one flavor");
    auto blocks = a.blocks();
    blocks.insert(blocks.end(), b.blocks().begin(), b.blocks().end());
    return ClassData<W>(a.flavor(), std::move(blocks));
}

template <class W>
ClassData<W> twist_class(const ClassData<W>& a, const W& w) {
    auto blocks = a.blocks();
    for (auto& b : blocks) b.weight = b.weight + w;
    return ClassData<W>(a.flavor(), std::move(blocks));
}

// Scalar restriction / extension act trivially on classification data: both
// leave the weights and depths unchanged. Kept explicit so pipelines can spell
// out every step.
template <class W>
ClassData<W> class_restrict(const ClassData<W>& a) { return a; }
template <class W>
ClassData<W> class_extend(const ClassData<W>& a) { return a; }

// Tensor product: weights add; a pair of blocks of depths d, d' contributes
// blocks of depth d + d' - 2k for k = 0..min(d, d') (the exact-sequence
// splitting of a product of two unipotent Jordan strings).
template <class W>
ClassData<W> class_tensor(const ClassData<W>& a, const ClassData<W>& b) {
    if (a.flavor() != b.flavor()) throw FlavorMismatch("tensor needs one flavor");
    std::vector<ClassBlock<W>> blocks;
    for (const auto& x : a.blocks())
        for (const auto& y : b.blocks()) {
            const W w = x.weight + y.weight;
            const int m = std::min(x.depth, y.depth);
            for (int k = 0; k <= m; ++k)
                blocks.push_back(ClassBlock<W>{w, x.depth + y.depth - 2 * k});
        }
    return ClassData<W>(a.flavor(), std::move(blocks));
}

// The full operator of a: block-diagonal, each block weight·I plus the
// one-superdiagonal nilpotent string.
template <class W>
Matrix<W> theta_of_class(const ClassData<W>& a) {
    const std::size_t n = static_cast<std::size_t>(a.rank());
    const W& ex = a.blocks().front().weight;
    Matrix<W> m = Matrix<W>::zeros(n, n, ex);
    const W one = scalar_one(ex);
    std::size_t pos = 0;
    for (const auto& b : a.blocks()) {
        for (int k = 0; k <= b.depth; ++k) {
            m.at(pos + static_cast<std::size_t>(k), pos + static_cast<std::size_t>(k)) = b.weight;
            if (k < b.depth)
                m.at(pos + static_cast<std::size_t>(k), pos + static_cast<std::size_t>(k) + 1) = one;
        }
        pos += static_cast<std::size_t>(b.depth) + 1;
    }
    return m;
}

// Classification of the functor applied to a. The induced operator splits over
// the exact weight sums of basis tableaux (the nilpotent part moves a tableau
// entry within its block, so it never changes the sum); the semisimple part is
// scalar on each sector, leaving a rational nilpotent matrix whose power ranks
// give the block sizes.
template <class W>
ClassData<W> class_schur(const ClassData<W>& a, const Partition& u) {
    const int d = a.rank();
    SchurSpace sp(u, d);
    if (sp.dim() == 0)
        throw EmptySchur("functor vanishes: rank " + std::to_string(d) + " is below " +
                         std::to_string(u.rows()) + " rows");

    std::vector<W> wt; // weight attached to each of the d basis indices
    for (const auto& b : a.blocks())
        for (int k = 0; k <= b.depth; ++k) wt.push_back(b.weight);

    Matrix<Rational> nil = Matrix<Rational>::zeros(static_cast<std::size_t>(d),
                                                   static_cast<std::size_t>(d), Rational(0));
    {
        std::size_t pos = 0;
        for (const auto& b : a.blocks()) {
            for (int k = 0; k < b.depth; ++k)
                nil.at(pos + static_cast<std::size_t>(k), pos + static_cast<std::size_t>(k) + 1) = 1;
            pos += static_cast<std::size_t>(b.depth) + 1;
        }
    }
    const Matrix<Rational> dn = schur_derivation(nil, sp);

    // group basis tableaux by exact weight sum
    std::map<std::vector<Rational>, std::pair<W, std::vector<std::size_t>>> groups;
    for (std::size_t t = 0; t < sp.dim(); ++t) {
        const auto content = sp.basis_at(t).content_vector(d);
        W sum = scalar_zero(wt[0]);
        for (int v = 0; v < d; ++v)
            if (content[static_cast<std::size_t>(v)] != 0)
                sum = sum + scalar_from_rational(
                                wt[0], Rational(content[static_cast<std::size_t>(v)])) *
                                wt[static_cast<std::size_t>(v)];
        auto key = scalar_flatten(sum);
        auto it = groups.find(key);
        if (it == groups.end())
            groups.emplace(std::move(key), std::make_pair(sum, std::vector<std::size_t>{t}));
        else
            it->second.second.push_back(t);
    }

    std::vector<ClassBlock<W>> blocks;
    for (const auto& [key, grp] : groups) {
        const auto& idx = grp.second; // ascending by construction
        Matrix<Rational> sub =
            Matrix<Rational>::zeros(idx.size(), idx.size(), Rational(0));
        for (std::size_t c = 0; c < idx.size(); ++c)
            for (std::size_t r = 0; r < sp.dim(); ++r) {
                const Rational& v = dn.at(r, idx[c]);
                if (v == 0) continue;
                const auto it = std::lower_bound(idx.begin(), idx.end(), r);
                if (it == idx.end() || *it != r)
                    throw DimensionMismatch("sector decomposition broken: stray entry");
                sub.at(static_cast<std::size_t>(it - idx.begin()), c) = v;
            }
        for (const auto& [size, count] : nilpotent_block_structure(sub))
            for (std::size_t k = 0; k < count; ++k)
                blocks.push_back(ClassBlock<W>{grp.first, static_cast<int>(size) - 1});
    }
    return ClassData<W>(a.flavor(), std::move(blocks));
}

// Recover classification data from an explicit operator whose eigenvalues are
// supplied (exact eigenvalue extraction would need factoring, which is out of
// scope). Block sizes come from the ranks of powers of theta - lambda.
template <class W>
ClassData<W> classdata_from_theta(const Matrix<W>& theta, const std::vector<W>& eigenvalues,
                                  Flavor flavor) {
    if (!theta.is_square()) throw DimensionMismatch("operator must be square");
    const std::size_t n = theta.rows();
    if (n == 0) throw DimensionMismatch("class data needs at least one block");

    std::map<std::vector<Rational>, W> distinct;
    for (const auto& ev : eigenvalues) distinct.emplace(scalar_flatten(ev), ev);

    std::vector<ClassBlock<W>> blocks;
    std::size_t covered = 0;
    for (const auto& [key, ev] : distinct) {
        Matrix<W> shifted = theta;
        for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) = shifted.at(i, i) - ev;

        std::vector<std::size_t> r{n}; // r[k] = rank(shifted^k)
        Matrix<W> power = shifted;
        while (true) {
            const std::size_t rk = rank(power);
            if (rk == r.back()) break;
            r.push_back(rk);
            power = power * shifted;
        }
        const std::size_t dim_lambda = n - r.back();
        covered += dim_lambda;
        auto rk = [&](std::size_t k) { return k < r.size() ? r[k] : r.back(); };
        for (std::size_t s = 1; s < r.size() + 1; ++s) {
            const std::size_t mult = rk(s - 1) + rk(s + 1) - 2 * rk(s);
            for (std::size_t k = 0; k < mult; ++k)
                blocks.push_back(ClassBlock<W>{ev, static_cast<int>(s) - 1});
        }
    }
    if (covered != n)
        throw HypothesisNotMet("supplied eigenvalues cover " + std::to_string(covered) +
                               " of " + std::to_string(n) + " dimensions");
    return ClassData<W>(flavor, std::move(blocks));
}

// --- labeled families (one classification per embedding) ----------------------

template <class W>
struct LabeledClass {
    std::string label;
    ClassData<W> data;

    friend bool operator==(const LabeledClass& a, const LabeledClass& b) {
        return a.label == b.label && a.data == b.data;
    }
};

template <class W>
using ClassFamily = std::vector<LabeledClass<W>>;

template <class W>
ClassFamily<W> family_tensor(const ClassFamily<W>& a, const ClassFamily<W>& b) {
    if (a.size() != b.size()) throw ParentMismatch("families have different labels");
    ClassFamily<W> out;
    for (std::size_t h = 0; h < a.size(); ++h) {
        if (a[h].label != b[h].label) throw ParentMismatch("families have different labels");
        out.push_back({a[h].label, class_tensor(a[h].data, b[h].data)});
    }
    return out;
}

template <class W>
ClassFamily<W> family_schur(const ClassFamily<W>& a, const Partition& u) {
    ClassFamily<W> out;
    for (const auto& lc : a) out.push_back({lc.label, class_schur(lc.data, u)});
    return out;
}

// Per-embedding slices of a labeled family.
template <class W>
std::vector<LabeledClass<W>> split_components(const ClassFamily<W>& fam) {
    return fam;
}

} // namespace phodge
