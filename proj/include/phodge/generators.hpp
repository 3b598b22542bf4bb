#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "phodge/pst.hpp"

// Seeded generators for valid module instances, shared by the test-suites and the
// self-check CLI. Everything here is deterministic in the seed.

namespace phodge {

// A multiplicative map G -> Z/m recorded by exponents; the matching character is
// g |-> zeta^exponents[g] for a root of unity zeta of order m.
struct ExponentHom {
    int order = 1;
    std::vector<int> exponents;
    std::string name;
};

struct ShapeSpec {
    std::shared_ptr<const GaloisShape> shape;
    std::string name;
    std::vector<ExponentHom> homs;
};

inline void check_exponent_hom(const GaloisShape& G, const ExponentHom& h) {
    if (h.order < 1 || static_cast<int>(h.exponents.size()) != G.size())
        throw BadShape("exponent map has the wrong size: " + h.name);
    auto residue = [&](int v) { return ((v % h.order) + h.order) % h.order; };
    for (int g = 0; g < G.size(); ++g)
        for (int k = 0; k < G.size(); ++k)
            if (residue(h.exponents[static_cast<std::size_t>(G.mul(g, k))] -
                        h.exponents[static_cast<std::size_t>(g)] -
                        h.exponents[static_cast<std::size_t>(k)]) != 0)
                throw BadShape("exponent map is not multiplicative: " + h.name);
}

// Order of the character after restriction to the distinguished subgroup.
inline int hom_inertia_order(const GaloisShape& G, const ExponentHom& h) {
    int ord = 1;
    for (int g : G.inertia()) {
        const int e = ((h.exponents[static_cast<std::size_t>(g)] % h.order) + h.order) % h.order;
        const int k = (e == 0) ? 1 : h.order / std::gcd(h.order, e);
        ord = std::lcm(ord, k);
    }
    return ord;
}

inline std::vector<ShapeSpec> shape_catalogue() {
    std::vector<ShapeSpec> out;

    auto add = [&](GaloisShape g, std::string name, std::vector<ExponentHom> homs) {
        auto shape = std::make_shared<const GaloisShape>(std::move(g));
        for (const auto& h : homs) check_exponent_hom(*shape, h);
        out.push_back({std::move(shape), std::move(name), std::move(homs)});
    };

    // order 2, subgroup = whole group (quotient is trivial)
    add(cyclic_shape(2, 1), "cyclic2-full",
        {{1, {0, 0}, "trivial"}, {2, {0, 1}, "sign"}});

    // order 4, subgroup of index 2
    add(cyclic_shape(4, 2), "cyclic4",
        {{1, {0, 0, 0, 0}, "trivial"},
         {2, {0, 1, 0, 1}, "mod2"},
         {4, {0, 1, 2, 3}, "full"}});

    // order 6, subgroup of index 3
    add(cyclic_shape(6, 3), "cyclic6",
        {{1, {0, 0, 0, 0, 0, 0}, "trivial"},
         {2, {0, 1, 0, 1, 0, 1}, "mod2"},
         {3, {0, 1, 2, 0, 1, 2}, "mod3"},
         {6, {0, 1, 2, 3, 4, 5}, "full"}});

    // nonabelian order 6 (ids 0..2 rotations, 3..5 reflections), subgroup = rotations
    add(dihedral_shape(3), "dihedral3",
        {{1, {0, 0, 0, 0, 0, 0}, "trivial"}, {2, {0, 0, 0, 1, 1, 1}, "sign"}});

    // order 12 product, subgroup of index 3
    {
        std::vector<int> x(12), ymod2(12), ymod3(12), y6(12);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 6; ++b) {
                const std::size_t id = static_cast<std::size_t>(a * 6 + b);
                x[id] = a;
                ymod2[id] = b % 2;
                ymod3[id] = b % 3;
                y6[id] = b;
            }
        add(product_cyclic_shape(2, 6, {{1, 0}, {0, 3}}, {0, 1}), "biprod12",
            {{1, std::vector<int>(12, 0), "trivial"},
             {2, x, "first"},
             {2, ymod2, "second-mod2"},
             {3, ymod3, "second-mod3"},
             {6, y6, "second"}});
    }
    return out;
}

inline std::shared_ptr<const AlgebraQ> algebra_for_order(int m) {
    if (m <= 2) return rational_line_algebra();
    return cyclotomic_algebra(static_cast<unsigned>(m));
}

inline ElemQ root_of_unity(const std::shared_ptr<const AlgebraQ>& E, int m) {
    if (m == 1) return E->one();
    if (m == 2) return -E->one();
    return E->gen();
}

// Block-diagonal module: Jordan strings with phi = diag(c*p, ..., c*p^len) and a unit
// above-diagonal chain inside each string, plus a scalar character action.
inline PhiNGalModule<ElemQ> character_core_module(
    const std::shared_ptr<const GaloisShape>& shape, const ExponentHom& hom,
    const std::shared_ptr<const AlgebraQ>& E, std::size_t rank, bool crystalline,
    const Rational& p, std::mt19937_64& rng) {
    const GaloisShape& G = *shape;
    const auto f = static_cast<std::size_t>(G.f());
    const EtaleElem<ElemQ> ex = EtaleElem<ElemQ>::diagonal(f, E->zero());
    const ElemQ zeta = root_of_unity(E, hom.order);

    std::vector<std::size_t> strings;
    std::uniform_int_distribution<std::size_t> len(1, 2);
    for (std::size_t left = rank; left > 0;) {
        const std::size_t l = crystalline ? 1 : std::min(left, len(rng));
        strings.push_back(l);
        left -= l;
    }

    auto phi = EtaleMatrix<ElemQ>::zeros(rank, rank, ex);
    auto nmat = EtaleMatrix<ElemQ>::zeros(rank, rank, ex);
    const Rational units[4] = {1, -1, 2, Rational(1) / 2};
    std::uniform_int_distribution<int> unit_pick(0, 3);
    const EtaleElem<ElemQ> one = EtaleElem<ElemQ>::diagonal(f, E->one());
    std::size_t pos = 0;
    for (const std::size_t l : strings) {
        Rational scale = units[static_cast<std::size_t>(unit_pick(rng))];
        for (std::size_t j = 0; j < l; ++j) {
            scale = scale * p;
            phi.at(pos + j, pos + j) = EtaleElem<ElemQ>::diagonal(f, E->from_rational(scale));
            if (j + 1 < l) nmat.at(pos + j, pos + j + 1) = one;
        }
        pos += l;
    }

    std::vector<EtaleMatrix<ElemQ>> rho;
    rho.reserve(static_cast<std::size_t>(G.size()));
    for (int g = 0; g < G.size(); ++g) {
        const auto e = static_cast<unsigned long>(
            ((hom.exponents[static_cast<std::size_t>(g)] % hom.order) + hom.order) % hom.order);
        const EtaleElem<ElemQ> chi = EtaleElem<ElemQ>::diagonal(f, zeta.pow(e));
        rho.push_back(chi * EtaleMatrix<ElemQ>::identity(rank, ex));
    }
    return PhiNGalModule<ElemQ>{shape, std::move(phi), std::move(nmat), std::move(rho), p};
}

// Semistable factor with a non-scalar action away from the subgroup: the quotient
// generator acts by a cycle of length f on a rank-f space.
inline PhiNGalModule<ElemQ> permutation_factor_module(
    const std::shared_ptr<const GaloisShape>& shape,
    const std::shared_ptr<const AlgebraQ>& E, const Rational& p) {
    const GaloisShape& G = *shape;
    const auto f = static_cast<std::size_t>(G.f());
    const EtaleElem<ElemQ> ex = EtaleElem<ElemQ>::diagonal(f, E->zero());
    auto cycle = EtaleMatrix<ElemQ>::zeros(f, f, ex);
    const EtaleElem<ElemQ> one = EtaleElem<ElemQ>::diagonal(f, E->one());
    for (std::size_t j = 0; j < f; ++j) cycle.at((j + 1) % f, j) = one;

    std::vector<EtaleMatrix<ElemQ>> rho;
    rho.reserve(static_cast<std::size_t>(G.size()));
    for (int g = 0; g < G.size(); ++g)
        rho.push_back(cycle.pow(static_cast<unsigned long>(G.deg(g))));
    return PhiNGalModule<ElemQ>{shape, EtaleMatrix<ElemQ>::identity(f, ex),
                                EtaleMatrix<ElemQ>::zeros(f, f, ex), std::move(rho), p};
}

// Semilinear change of basis; produces a module with the same abstract structure.
template <class B>
PhiNGalModule<B> conjugate_module(const PhiNGalModule<B>& D, const EtaleMatrix<B>& M) {
    const auto Minv = inverse(M);
    std::vector<EtaleMatrix<B>> rho;
    rho.reserve(D.rho.size());
    for (int g = 0; g < D.shape->size(); ++g)
        rho.push_back(Minv * D.rho[static_cast<std::size_t>(g)] *
                      sigma_matrix(M, D.shape->deg(g)));
    return PhiNGalModule<B>{D.shape, Minv * D.phi * sigma_matrix(M, 1), Minv * D.nmat * M,
                            std::move(rho), D.p};
}

inline EtaleMatrix<ElemQ> random_base_change(std::size_t n, std::size_t f,
                                             const std::shared_ptr<const AlgebraQ>& E,
                                             std::mt19937_64& rng) {
    const EtaleElem<ElemQ> ex = EtaleElem<ElemQ>::diagonal(f, E->zero());
    auto M = EtaleMatrix<ElemQ>::identity(n, ex);
    if (n > 1) {
        std::uniform_int_distribution<std::size_t> idx(0, n - 1);
        std::uniform_int_distribution<int> coef(-2, 2);
        for (int step = 0; step < 4; ++step) {
            const std::size_t i = idx(rng), j = idx(rng);
            if (i == j) continue;
            const EtaleElem<ElemQ> k =
                EtaleElem<ElemQ>::diagonal(f, E->from_rational(coef(rng)));
            for (std::size_t c = 0; c < n; ++c) M.at(i, c) = M.at(i, c) + k * M.at(j, c);
        }
    }
    if (f > 1) {
        // one row scaled by a unit with genuinely different components
        std::uniform_int_distribution<std::size_t> idx(0, n - 1);
        std::bernoulli_distribution flip(0.5);
        const std::size_t i = idx(rng);
        std::vector<ElemQ> comps;
        comps.reserve(f);
        for (std::size_t c = 0; c < f; ++c) comps.push_back(flip(rng) ? -E->one() : E->one());
        const EtaleElem<ElemQ> unit(std::move(comps));
        for (std::size_t c = 0; c < n; ++c) M.at(i, c) = unit * M.at(i, c);
    }
    return M;
}

struct TensorPairInstance {
    PhiNGalModule<ElemQ> left;
    PhiNGalModule<ElemQ> right;
    std::shared_ptr<const AlgebraQ> E;
    ExponentHom hom; // inertia character of `left`; `right` carries its inverse
};

inline TensorPairInstance generate_tensor_pair(const ShapeSpec& spec, std::size_t hom_index,
                                               std::uint64_t seed, bool crystalline,
                                               const Rational& p = 2) {
    std::mt19937_64 rng(seed);
    const ExponentHom& hom = spec.homs.at(hom_index);
    auto E = algebra_for_order(hom.order);
    ExponentHom inv = hom;
    inv.name += "-inverse";
    for (auto& e : inv.exponents) e = (hom.order - ((e % hom.order) + hom.order) % hom.order) % hom.order;

    std::uniform_int_distribution<std::size_t> rnk(1, 2);
    auto left = character_core_module(spec.shape, hom, E, rnk(rng), crystalline, p, rng);
    auto right = character_core_module(spec.shape, inv, E, rnk(rng), crystalline, p, rng);

    // a cycle factor on at most one side keeps the tensor rank (and the cost of
    // validating it) small while still mixing non-diagonal actions in
    std::bernoulli_distribution coin(0.5);
    const auto f = static_cast<std::size_t>(spec.shape->f());
    if (f > 1 && coin(rng)) {
        auto& side = coin(rng) ? left : right;
        side = module_tensor(side, permutation_factor_module(spec.shape, E, p));
    }
    left = conjugate_module(left, random_base_change(left.rank(), f, E, rng));
    right = conjugate_module(right, random_base_change(right.rank(), f, E, rng));
    return {std::move(left), std::move(right), std::move(E), hom};
}

struct SchurInstance {
    PhiNGalModule<ElemQ> module;
    Partition u;
    std::shared_ptr<const AlgebraQ> E;
    ExponentHom hom;
};

inline SchurInstance generate_schur_instance(const ShapeSpec& spec, std::size_t hom_index,
                                             const Partition& u, std::uint64_t seed,
                                             bool crystalline, const Rational& p = 2) {
    std::mt19937_64 rng(seed);
    const ExponentHom& hom = spec.homs.at(hom_index);
    if (u.size() % hom_inertia_order(*spec.shape, hom) != 0)
        throw HypothesisNotMet("subgroup character order must divide the functor degree");
    auto E = algebra_for_order(hom.order);

    std::uniform_int_distribution<std::size_t> extra(0, 1);
    const std::size_t rank = static_cast<std::size_t>(r_of(u)) + extra(rng);
    auto D = character_core_module(spec.shape, hom, E, rank, crystalline, p, rng);
    D = conjugate_module(D, random_base_change(rank, static_cast<std::size_t>(spec.shape->f()),
                                               E, rng));
    return {std::move(D), u, std::move(E), hom};
}

} // namespace phodge
