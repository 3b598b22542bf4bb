#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "phodge/generators.hpp"
#include "phodge/pst.hpp"

using namespace phodge;

namespace {

std::shared_ptr<const GaloisShape> make_shape(GaloisShape g) {
    return std::make_shared<const GaloisShape>(std::move(g));
}

EtaleElem<ElemQ> qdiag(std::size_t f, const std::shared_ptr<const AlgebraQ>& E,
                       const Rational& v) {
    return EtaleElem<ElemQ>::diagonal(f, E->from_rational(v));
}

// rank-1 module with phi = (p) and a supplied scalar action
PhiNGalModule<ElemQ> scalar_module(const std::shared_ptr<const GaloisShape>& shape,
                                   const std::shared_ptr<const AlgebraQ>& E,
                                   std::vector<EtaleElem<ElemQ>> action,
                                   const Rational& p = 2) {
    const auto f = static_cast<std::size_t>(shape->f());
    const auto ex = qdiag(f, E, 0);
    auto phi = EtaleMatrix<ElemQ>::zeros(1, 1, ex);
    phi.at(0, 0) = qdiag(f, E, p);
    std::vector<EtaleMatrix<ElemQ>> rho;
    for (auto& v : action) {
        auto m = EtaleMatrix<ElemQ>::zeros(1, 1, ex);
        m.at(0, 0) = std::move(v);
        rho.push_back(std::move(m));
    }
    return PhiNGalModule<ElemQ>{shape, std::move(phi), EtaleMatrix<ElemQ>::zeros(1, 1, ex),
                                std::move(rho), p};
}

bool has_issue(const ValidationReport& rep, const std::string& check) {
    return std::any_of(rep.issues.begin(), rep.issues.end(),
                       [&](const ValidationIssue& i) { return i.check == check; });
}

} // namespace

TEST_CASE("group factories produce consistent quotient data") {
    for (const auto& spec : shape_catalogue()) {
        CAPTURE(spec.name);
        const GaloisShape& G = *spec.shape;
        CHECK(G.size() % static_cast<int>(G.inertia().size()) == 0);
        CHECK(G.f() * static_cast<int>(G.inertia().size()) == G.size());
        // factorization g = g' * omega^deg(g) with g' in the subgroup
        for (int g = 0; g < G.size(); ++g) {
            CHECK(G.in_inertia(G.inertia_part(g)));
            CHECK(G.mul(G.inertia_part(g), G.omega_pow(G.deg(g))) == g);
            CHECK((G.deg(g) == 0) == G.in_inertia(g));
        }
        // the subgroup is normal
        for (int g = 0; g < G.size(); ++g)
            for (int h : G.inertia())
                CHECK(G.in_inertia(G.mul(G.mul(g, h), G.inverse(g))));
    }

    SUBCASE("specific shapes") {
        const GaloisShape z4 = cyclic_shape(4, 2);
        CHECK(z4.size() == 4);
        CHECK(z4.f() == 2);
        CHECK(z4.inertia() == std::vector<int>{0, 2});
        CHECK(z4.deg(1) == 1);
        CHECK(z4.deg(3) == 1);
        CHECK(z4.inertia_part(3) == 2);

        const GaloisShape d3 = dihedral_shape(3);
        CHECK(d3.size() == 6);
        CHECK(d3.f() == 2);
        CHECK(d3.inertia() == std::vector<int>{0, 1, 2});
        // conjugation by the chosen reflection inverts rotations
        CHECK(d3.conj_by_omega(1) == 2);
        CHECK(d3.conj_by_omega(2) == 1);

        const GaloisShape full = cyclic_shape(2, 1);
        CHECK(full.f() == 1);
        CHECK(full.inertia() == std::vector<int>{0, 1});

        const GaloisShape prod = product_cyclic_shape(2, 6, {{1, 0}, {0, 3}}, {0, 1});
        CHECK(prod.size() == 12);
        CHECK(prod.f() == 3);
        CHECK(prod.inertia() == std::vector<int>{0, 3, 6, 9});
    }
}

TEST_CASE("group validation rejects malformed input") {
    // row 1 repeats an entry: not a Latin square
    CHECK_THROWS_AS(GaloisShape({{0, 1}, {1, 1}}, {0}, 1), ParseError);
    // Latin square with no two-sided identity
    CHECK_THROWS_AS(GaloisShape({{1, 0}, {0, 1}}, {0}, 1), ParseError);
    // subgroup not closed
    CHECK_THROWS_AS(GaloisShape(cyclic_shape(4, 2).table(), {0, 1}, 1), ParseError);
    // reflections in the dihedral group do not form a normal (or closed) subgroup
    CHECK_THROWS_AS(GaloisShape(dihedral_shape(3).table(), {0, 3}, 1), ParseError);
    // omega inside the subgroup cannot generate a nontrivial quotient
    CHECK_THROWS_AS(GaloisShape(cyclic_shape(4, 2).table(), {0, 2}, 2), ParseError);
    // supplied degree table must match the factorization
    CHECK_THROWS_AS(GaloisShape(cyclic_shape(4, 2).table(), {0, 2}, 1,
                                std::vector<int>{0, 0, 0, 0}),
                    ParseError);
    // element out of range
    CHECK_THROWS_AS(GaloisShape({{0, 1}, {1, 2}}, {0}, 1), ParseError);
    // non-normal subgroup of the order-12 product? subgroups of abelian groups are
    // normal, so instead check a generator outside the group
    CHECK_THROWS_AS(product_cyclic_shape(2, 2, {{5, 0}}, {0, 1}), ParseError);
}

TEST_CASE("generated modules pass validation") {
    std::uint64_t seed = 11;
    for (const auto& spec : shape_catalogue()) {
        CAPTURE(spec.name);
        for (std::size_t h = 0; h < spec.homs.size(); ++h) {
            for (const bool crys : {false, true}) {
                const auto pair = generate_tensor_pair(spec, h, seed++, crys);
                CAPTURE(pair.hom.name);
                CHECK(validate(pair.left).ok());
                CHECK(validate(pair.right).ok());
                if (crys) {
                    CHECK(pair.left.nmat.is_zero());
                    CHECK(pair.right.nmat.is_zero());
                }
            }
        }
    }
}

TEST_CASE("validation pinpoints broken relations") {
    const auto specs = shape_catalogue();
    const auto& z4 = specs[1]; // order 4, subgroup {0,2}
    REQUIRE(z4.name == "cyclic4");
    auto E = algebra_for_order(4);
    // find a seed whose Jordan strings include a length-2 block, so N != 0
    auto make_base = [&](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return character_core_module(z4.shape, z4.homs[2], E, 3, false, 2, rng);
    };
    auto base = make_base(5);
    for (std::uint64_t s = 6; base.nmat.is_zero(); ++s) base = make_base(s);
    REQUIRE(validate(base).ok());
    const auto f = static_cast<std::size_t>(z4.shape->f());

    SUBCASE("singular phi component") {
        auto d = base;
        d.phi.at(0, 0) = EtaleElem<ElemQ>({E->zero(), E->one()});
        const auto rep = validate(d);
        REQUIRE(!rep.ok());
        CHECK(has_issue(rep, "phi"));
    }
    SUBCASE("non-nilpotent monodromy") {
        auto d = base;
        d.nmat = EtaleMatrix<ElemQ>::identity(3, d.exemplar());
        const auto rep = validate(d);
        REQUIRE(!rep.ok());
        CHECK(has_issue(rep, "N"));
    }
    SUBCASE("monodromy on the wrong side of phi") {
        auto d = base;
        d.nmat = d.nmat.transpose();
        const auto rep = validate(d);
        REQUIRE(!rep.ok());
        CHECK(has_issue(rep, "N-phi"));
    }
    SUBCASE("identity element acting nontrivially") {
        auto d = base;
        d.rho[0] = qdiag(f, E, 2) * EtaleMatrix<ElemQ>::identity(3, d.exemplar());
        const auto rep = validate(d);
        REQUIRE(!rep.ok());
        CHECK(has_issue(rep, "rho"));
    }
    SUBCASE("broken twisted homomorphism") {
        auto d = base;
        d.rho[3] = qdiag(f, E, 7) * d.rho[3];
        const auto rep = validate(d);
        REQUIRE(!rep.ok());
        CHECK(has_issue(rep, "rho-twisted-hom"));
        // the report names a witness pair
        bool witness = false;
        for (const auto& iss : rep.issues)
            if (iss.check == "rho-twisted-hom" &&
                iss.detail.find("at (") != std::string::npos)
                witness = true;
        CHECK(witness);
    }
    SUBCASE("action entry not fixed by the shift where it must be") {
        auto d = base;
        // component-dependent scalar on a degree-1 element breaks phi compatibility
        const EtaleElem<ElemQ> mixed({E->one(), -E->one()});
        d.rho[1] = mixed * d.rho[1];
        const auto rep = validate(d);
        REQUIRE(!rep.ok());
        CHECK(has_issue(rep, "phi-rho"));
    }
    SUBCASE("monodromy not commuting with the action") {
        auto d = base;
        // a shift-fixed diagonal with distinct entries cannot commute with a
        // nonzero nilpotent chain
        auto diag = EtaleMatrix<ElemQ>::zeros(3, 3, d.exemplar());
        for (std::size_t i = 0; i < 3; ++i) diag.at(i, i) = qdiag(f, E, 1 << i);
        d.rho[2] = diag;
        const auto rep = validate(d);
        REQUIRE(!rep.ok());
        CHECK(has_issue(rep, "N-rho"));
    }
    SUBCASE("bad p parameter") {
        auto d = base;
        d.p = Rational(1) / 2;
        const auto rep = validate(d);
        REQUIRE(!rep.ok());
        CHECK(has_issue(rep, "p"));
    }
    SUBCASE("wrong number of action matrices") {
        auto d = base;
        d.rho.pop_back();
        const auto rep = validate(d);
        REQUIRE(!rep.ok());
        CHECK(has_issue(rep, "rho"));
    }
}

TEST_CASE("semistable and crystalline predicates on small modules") {
    const auto shape = make_shape(cyclic_shape(4, 2));
    auto E = rational_line_algebra();
    const std::size_t f = 2;

    SUBCASE("trivial rank-1 module is crystalline") {
        const auto one = qdiag(f, E, 1);
        auto d = scalar_module(shape, E, {one, one, one, one});
        CHECK(validate(d).ok());
        CHECK(is_semistable(d));
        CHECK(is_crystalline(d));
    }
    SUBCASE("sign action on the quotient stays semistable") {
        const auto one = qdiag(f, E, 1);
        auto d = scalar_module(shape, E, {one, -one, one, -one});
        CHECK(is_semistable(d));
    }
    SUBCASE("sign action on the subgroup is not semistable") {
        auto E4 = cyclotomic_algebra(4);
        const auto one = qdiag(f, E4, 1);
        const auto i_elem = EtaleElem<ElemQ>::diagonal(f, E4->gen());
        auto d = scalar_module(shape, E4, {one, i_elem, -one, -one * i_elem});
        CHECK(validate(d).ok());
        CHECK(!is_semistable(d));
    }
    SUBCASE("invalid input is rejected, not classified") {
        const auto one = qdiag(f, E, 1);
        auto d = scalar_module(shape, E, {one, one, one, one});
        d.nmat.at(0, 0) = one; // not nilpotent
        CHECK_THROWS_AS(is_semistable(d), InvalidModule);
    }
    SUBCASE("nonzero monodromy blocks crystallinity but not semistability") {
        std::mt19937_64 rng(3);
        const auto& cat = shape_catalogue();
        auto d = character_core_module(cat[1].shape, cat[1].homs[0], E, 2, false, 2, rng);
        while (d.nmat.is_zero()) d = character_core_module(cat[1].shape, cat[1].homs[0], E, 2, false, 2, rng);
        CHECK(is_semistable(d));
        CHECK(!is_crystalline(d));
    }
}

TEST_CASE("tensor and functor constructions preserve validity") {
    const auto specs = shape_catalogue();
    std::uint64_t seed = 40;
    for (const auto& idx : {std::size_t{1}, std::size_t{3}, std::size_t{4}}) {
        const auto& spec = specs[idx];
        CAPTURE(spec.name);
        const auto pair = generate_tensor_pair(spec, spec.homs.size() - 1, seed++, false);
        const auto t = module_tensor(pair.left, pair.right);
        CHECK(validate(t).ok());
        CHECK(t.rank() == pair.left.rank() * pair.right.rank());

        if (pair.left.rank() <= 3) {
            const auto s = module_schur(pair.left, Partition({2}));
            CHECK(validate(s).ok());
        }
    }

    SUBCASE("mismatched group data is refused") {
        const auto a = generate_tensor_pair(specs[1], 0, 1, true);
        const auto b = generate_tensor_pair(specs[2], 0, 1, true);
        CHECK_THROWS_AS(module_tensor(a.left, b.right), ShapeMismatch);
    }
    SUBCASE("mismatched p is refused") {
        auto a = generate_tensor_pair(specs[1], 0, 2, true);
        auto bad = a.right;
        // rebuild at p = 3
        std::mt19937_64 rng(9);
        auto E = rational_line_algebra();
        bad = character_core_module(specs[1].shape, specs[1].homs[0], E, 1, true, 3, rng);
        CHECK_THROWS_AS(module_tensor(a.left, bad), ShapeMismatch);
    }
    SUBCASE("vanishing functor is refused") {
        const auto a = generate_tensor_pair(specs[1], 0, 3, true);
        const std::size_t r = a.left.rank();
        std::vector<int> col(r + 1, 1); // column of height rank+1
        CHECK_THROWS_AS(module_schur(a.left, Partition(col)), EmptySchur);
    }
}

TEST_CASE("a tensor of inverse character twists is semistable while factors are not") {
    const auto specs = shape_catalogue();
    const auto& z4 = specs[1];
    const auto pair = generate_tensor_pair(z4, 2, 77, false); // order-4 character
    CHECK(!is_semistable(pair.left));
    CHECK(!is_semistable(pair.right));
    CHECK(is_semistable(module_tensor(pair.left, pair.right)));
}

TEST_CASE("inertia scalar extraction") {
    const auto shape = make_shape(cyclic_shape(4, 2));
    auto E4 = cyclotomic_algebra(4);
    const std::size_t f = 2;
    const auto ex = qdiag(f, E4, 0);

    // rank-2 module rho(g) = A^g with A = diag(1, i): subgroup acts by diag(1,-1)
    auto a_matrix = EtaleMatrix<ElemQ>::identity(2, ex);
    a_matrix.at(1, 1) = EtaleElem<ElemQ>::diagonal(f, E4->gen());
    std::vector<EtaleMatrix<ElemQ>> rho;
    for (unsigned long g = 0; g < 4; ++g) rho.push_back(a_matrix.pow(g));
    const auto phi = qdiag(f, E4, 2) * EtaleMatrix<ElemQ>::identity(2, ex);
    const PhiNGalModule<ElemQ> diag_mod{shape, phi, EtaleMatrix<ElemQ>::zeros(2, 2, ex), rho,
                                        2};
    REQUIRE(validate(diag_mod).ok());

    // rank-2 module rho(g) = (i^g) Id: subgroup acts by the scalar -1
    std::vector<EtaleMatrix<ElemQ>> rho_scalar;
    for (unsigned long g = 0; g < 4; ++g) {
        const auto scale = EtaleElem<ElemQ>::diagonal(f, E4->gen().pow(g));
        rho_scalar.push_back(scale * EtaleMatrix<ElemQ>::identity(2, ex));
    }
    const PhiNGalModule<ElemQ> scalar_mod{shape, phi, EtaleMatrix<ElemQ>::zeros(2, 2, ex),
                                          rho_scalar, 2};
    REQUIRE(validate(scalar_mod).ok());

    SUBCASE("square context accepts the scalar module and recovers the sign") {
        const auto eta = inertia_scalar_extract_schur(scalar_mod, Partition({2}));
        CHECK(eta.at(0) == E4->one());
        CHECK(eta.at(2) == -E4->one());
        CHECK(eta.values.size() == 2);
    }
    SUBCASE("non-semistable context is refused before scalarity is considered") {
        CHECK_THROWS_AS(inertia_scalar_extract_schur(diag_mod, Partition({1, 1})),
                        ContextNotSemistable);
        CHECK_THROWS_AS(inertia_scalar_extract_schur(diag_mod, Partition({2})),
                        ContextNotSemistable);
    }
    SUBCASE("rectangular shapes demand one extra dimension even when semistable") {
        // the exterior square of the rank-2 scalar module IS semistable, but the
        // scalar-forcing inference needs rank 3 for the 1x1-rectangle column shape
        CHECK(is_semistable(module_schur(scalar_mod, Partition({1, 1}))));
        CHECK_THROWS_AS(inertia_scalar_extract_schur(scalar_mod, Partition({1, 1})),
                        RankTooSmall);
    }
    SUBCASE("exterior square extraction at sufficient rank") {
        std::vector<EtaleMatrix<ElemQ>> rho3;
        for (unsigned long g = 0; g < 4; ++g) {
            const auto scale = EtaleElem<ElemQ>::diagonal(f, E4->gen().pow(g));
            rho3.push_back(scale * EtaleMatrix<ElemQ>::identity(3, ex));
        }
        const PhiNGalModule<ElemQ> scalar3{shape,
                                           qdiag(f, E4, 2) *
                                               EtaleMatrix<ElemQ>::identity(3, ex),
                                           EtaleMatrix<ElemQ>::zeros(3, 3, ex), rho3, 2};
        REQUIRE(validate(scalar3).ok());
        const auto eta = inertia_scalar_extract_schur(scalar3, Partition({1, 1}));
        CHECK(eta.at(2) == -E4->one());
    }
    SUBCASE("direct extraction defends against non-scalar subgroup actions") {
        // a semistable tensor context forces scalar factors, so NotScalar can only
        // arise when the core is driven directly on out-of-scope input
        CHECK_THROWS_AS(extract_inertia_character(diag_mod), NotScalar);
    }
    SUBCASE("the rectangle bound blocks a genuinely unsound extraction") {
        // rank-2 module over the index-2 subgroup of order 3: inertia acts by
        // diag(z, z^2) for a cube root z, whose exterior square (the determinant)
        // is trivial. The context is semistable yet the action is NOT scalar;
        // refusing with RankTooSmall is what keeps the inference sound.
        const auto s6 = make_shape(cyclic_shape(6, 2));
        auto E6 = cyclotomic_algebra(6);
        const auto ex6 = qdiag(2, E6, 0);
        auto b_matrix = EtaleMatrix<ElemQ>::identity(2, ex6);
        b_matrix.at(0, 0) = EtaleElem<ElemQ>::diagonal(2, E6->gen());
        b_matrix.at(1, 1) =
            EtaleElem<ElemQ>::diagonal(2, scalar_invert(E6->gen()));
        std::vector<EtaleMatrix<ElemQ>> rho6;
        for (unsigned long g = 0; g < 6; ++g) rho6.push_back(b_matrix.pow(g));
        const PhiNGalModule<ElemQ> unsound{s6,
                                           qdiag(2, E6, 2) *
                                               EtaleMatrix<ElemQ>::identity(2, ex6),
                                           EtaleMatrix<ElemQ>::zeros(2, 2, ex6), rho6, 2};
        REQUIRE(validate(unsound).ok());
        REQUIRE(!unsound.rho[2].is_identity()); // subgroup element acting non-trivially
        CHECK(is_semistable(module_schur(unsound, Partition({1, 1}))));
        CHECK_THROWS_AS(inertia_scalar_extract_schur(unsound, Partition({1, 1})),
                        RankTooSmall);
    }
    SUBCASE("mixed pair with a non-semistable tensor is refused") {
        // subgroup action of the pair is (-1)*diag(1,-1) = diag(-1,1), not the identity
        CHECK_THROWS_AS(inertia_scalar_extract_tensor(scalar_mod, diag_mod),
                        ContextNotSemistable);
    }
    SUBCASE("rank guard precedes everything else") {
        CHECK_THROWS_AS(inertia_scalar_extract_schur(scalar_mod, Partition({1, 1, 1})),
                        RankTooSmall);
    }
    SUBCASE("direct extraction rejects conjugation-moved characters") {
        // dihedral shape: conjugation by the reflection inverts rotations, so a
        // faithful rotation character cannot be invariant. Build the action data
        // directly (the full module relations would already rule it out).
        const auto d3 = make_shape(dihedral_shape(3));
        auto E3 = cyclotomic_algebra(3);
        const auto zeta = E3->gen();
        std::vector<EtaleElem<ElemQ>> vals;
        for (unsigned long i = 0; i < 3; ++i)
            vals.push_back(EtaleElem<ElemQ>::diagonal(2, zeta.pow(i)));
        for (int i = 0; i < 3; ++i) vals.push_back(qdiag(2, E3, 1));
        const auto bad = scalar_module(d3, E3, std::move(vals));
        CHECK_THROWS_AS(extract_inertia_character(bad), NotConjInvariant);
    }
}

TEST_CASE("character extension builds the quotient ring extension") {
    const auto shape = make_shape(cyclic_shape(4, 2));
    auto E = rational_line_algebra();

    SUBCASE("order-two subgroup value forces an imaginary unit") {
        Character<ElemQ> eta{shape, false, {{0, E->one()}, {2, -E->one()}}};
        const auto ext = extend_character(eta);
        CHECK(ext.F->degree() == 2);
        const auto x = ext.F->gen();
        CHECK(x * x == -ext.F->one()); // modulus is x^2 + 1
        CHECK(ext.mu.at(1) == x);
        CHECK(ext.mu.at(2) == -ext.F->one());
        CHECK(ext.mu.at(3) == -x);
        CHECK(ext.mu.at(0) == ext.F->one());
        CHECK(ext.mu.full_domain);
    }
    SUBCASE("trivial subgroup value yields a ring with zero divisors, still usable") {
        Character<ElemQ> eta{shape, false, {{0, E->one()}, {2, E->one()}}};
        const auto ext = extend_character(eta);
        const auto x = ext.F->gen();
        CHECK(x * x == ext.F->one()); // modulus x^2 - 1 splits
        CHECK(scalar_try_invert(x).has_value());
        // (x-1) is a zero divisor, so inversion of arbitrary elements may fail
        CHECK(!scalar_try_invert(x - ext.F->one()).has_value());
    }
    SUBCASE("a supplied factor of the canonical modulus is honored") {
        Character<ElemQ> eta{shape, false, {{0, E->one()}, {2, E->one()}}};
        std::vector<ElemQ> lin{-E->one(), E->one()}; // x - 1
        const auto ext = extend_character(eta, Poly<ElemQ>(lin));
        CHECK(ext.F->degree() == 1);
        CHECK(ext.mu.at(1) == ext.F->one());
        CHECK(ext.mu.at(3) == ext.F->one());
    }
    SUBCASE("a non-factor is rejected") {
        Character<ElemQ> eta{shape, false, {{0, E->one()}, {2, E->one()}}};
        std::vector<ElemQ> lin{-E->from_rational(2), E->one()}; // x - 2
        CHECK_THROWS_AS(extend_character(eta, Poly<ElemQ>(lin)), HypothesisNotMet);
    }
    SUBCASE("non-multiplicative input is rejected") {
        Character<ElemQ> eta{shape, false, {{0, E->one()}, {2, E->from_rational(2)}}};
        // eta(2+2) = eta(0) = 1 but eta(2)^2 = 4
        CHECK_THROWS_AS(extend_character(eta), HypothesisNotMet);
    }
    SUBCASE("missing subgroup values are rejected") {
        Character<ElemQ> eta{shape, false, {{0, E->one()}}};
        CHECK_THROWS_AS(extend_character(eta), DimensionMismatch);
    }
    SUBCASE("conjugation-moved character is rejected") {
        const auto d3 = make_shape(dihedral_shape(3));
        auto E3 = cyclotomic_algebra(3);
        Character<ElemQ> eta{d3, false, {}};
        for (int i = 0; i < 3; ++i) eta.values.emplace(i, E3->gen().pow(static_cast<unsigned long>(i)));
        CHECK_THROWS_AS(extend_character(eta), NotConjInvariant);
    }
    SUBCASE("non-unit subgroup value is rejected") {
        Character<ElemQ> eta{shape, false, {{0, E->one()}, {2, E->zero()}}};
        CHECK_THROWS_AS(extend_character(eta), HypothesisNotMet);
        // (0 fails multiplicativity first: eta(0) must be 1 = 0*0 is false)
    }
}

TEST_CASE("twisting by a character lifts coefficients and rescales the action") {
    const auto specs = shape_catalogue();
    const auto& z4 = specs[1];
    const auto pair = generate_tensor_pair(z4, 1, 13, false); // order-2 character, trivial on subgroup
    const auto eta = extract_inertia_character(pair.left);
    const auto ext = extend_character(eta);

    const auto down = twist_module(pair.left, ext.mu, -1);
    const auto up = twist_module(pair.left, ext.mu, +1);
    CHECK(validate(down).ok());
    CHECK(validate(up).ok());
    CHECK(down.rank() == pair.left.rank());
    CHECK(down.p == pair.left.p);

    SUBCASE("sign conventions are inverse to each other") {
        // (mu^{-1} twist) action times (mu twist) action equals the square of the lift
        for (int g = 0; g < z4.shape->size(); ++g) {
            const auto lifted = lift_matrix(pair.left.rho[static_cast<std::size_t>(g)], ext.F);
            CHECK(down.rho[static_cast<std::size_t>(g)] *
                      up.rho[static_cast<std::size_t>(g)] ==
                  lifted * lifted);
        }
    }
    SUBCASE("twisting through a degree-one factor is the identity on the action") {
        Character<ElemQ> trivial{z4.shape, false, {}};
        auto E = eta.at(0).parent();
        for (int g : z4.shape->inertia()) trivial.values.emplace(g, E->one());
        std::vector<ElemQ> lin{-E->one(), E->one()};
        const auto flat = extend_character(trivial, Poly<ElemQ>(lin));
        const auto same = twist_module(pair.left, flat.mu, -1);
        for (int g = 0; g < z4.shape->size(); ++g)
            CHECK(same.rho[static_cast<std::size_t>(g)] ==
                  lift_matrix(pair.left.rho[static_cast<std::size_t>(g)], flat.F));
    }
    SUBCASE("wrong group is refused") {
        CHECK_THROWS_AS(twist_module(generate_tensor_pair(specs[2], 0, 1, true).left,
                                     ext.mu, -1),
                        ShapeMismatch);
    }
    SUBCASE("subgroup-only character cannot twist") {
        Character<AlgebraElem<ElemQ>> partial{z4.shape, false, {}};
        for (int g : z4.shape->inertia()) partial.values.emplace(g, ext.mu.at(g));
        CHECK_THROWS_AS(twist_module(pair.left, partial, -1), HypothesisNotMet);
    }
}

TEST_CASE("monodromy descent") {
    const auto specs = shape_catalogue();
    const auto& z4 = specs[1];
    auto E = rational_line_algebra();
    std::mt19937_64 rng(21);

    auto with_n = character_core_module(z4.shape, z4.homs[0], E, 2, false, 2, rng);
    while (with_n.nmat.is_zero())
        with_n = character_core_module(z4.shape, z4.homs[0], E, 2, false, 2, rng);
    const auto flat = character_core_module(z4.shape, z4.homs[0], E, 2, true, 2, rng);

    SUBCASE("nonzero combined operator is out of scope") {
        CHECK_THROWS_AS(monodromy_descend_tensor(with_n, flat), HypothesisNotMet);
        CHECK_THROWS_AS(monodromy_descend_schur(with_n, Partition({2})), HypothesisNotMet);
    }
    SUBCASE("zero operators descend") {
        const auto verdict = monodromy_descend_tensor(flat, flat);
        CHECK(verdict.ok);
        const auto sv = monodromy_descend_schur(flat, Partition({2}));
        CHECK(sv.ok);
    }
    SUBCASE("rank guard") {
        CHECK_THROWS_AS(monodromy_descend_schur(flat, Partition({1, 1, 1})), RankTooSmall);
    }
}

TEST_CASE("full tensor pipeline recovers a twist certificate") {
    std::uint64_t seed = 300;
    for (const auto& spec : shape_catalogue()) {
        CAPTURE(spec.name);
        for (std::size_t h = 0; h < spec.homs.size(); ++h) {
            for (const bool crys : {false, true}) {
                const auto pair = generate_tensor_pair(spec, h, seed++, crys);
                const auto res = pipeline_sst_tensor(pair.left, pair.right);
                CAPTURE(pair.hom.name);
                REQUIRE(res.twisted.size() == 2);
                // the pipeline itself validates the twists while deciding these flags
                CHECK(res.twist_semistable[0]);
                CHECK(res.twist_semistable[1]);
                // the recovered subgroup character matches the generator's data
                const auto zeta = root_of_unity(pair.E, pair.hom.order);
                for (int g : spec.shape->inertia()) {
                    const auto e = static_cast<unsigned long>(
                        pair.hom.exponents[static_cast<std::size_t>(g)]);
                    CHECK(res.eta.at(g) == zeta.pow(e));
                }
                if (crys) {
                    CHECK(res.context_crystalline);
                    REQUIRE(res.descent.has_value());
                    CHECK(res.descent->ok);
                    REQUIRE(res.twist_crystalline.size() == 2);
                    CHECK(res.twist_crystalline[0]);
                    CHECK(res.twist_crystalline[1]);
                }
            }
        }
    }
}

TEST_CASE("full functor pipeline recovers a twist certificate") {
    const std::vector<Partition> shapes{Partition({2}), Partition({1, 1}), Partition({3}),
                                        Partition({2, 1}), Partition({2, 2})};
    std::uint64_t seed = 900;
    for (const auto& spec : shape_catalogue()) {
        CAPTURE(spec.name);
        for (std::size_t h = 0; h < spec.homs.size(); ++h) {
            for (const auto& u : shapes) {
                if (u.size() % hom_inertia_order(*spec.shape, spec.homs[h]) != 0) continue;
                if (r_of(u) > 3) continue;
                for (const bool crys : {false, true}) {
                    const auto inst = generate_schur_instance(spec, h, u, seed++, crys);
                    const auto res = pipeline_sst_schur(inst.module, inst.u);
                    CAPTURE(spec.homs[h].name);
                    REQUIRE(res.twisted.size() == 1);
                    CHECK(res.twist_semistable[0]);
                    if (crys) {
                        REQUIRE(res.descent.has_value());
                        CHECK(res.descent->ok);
                        CHECK(res.twist_crystalline[0]);
                    }
                }
            }
        }
    }
}

TEST_CASE("pipeline guards") {
    const auto specs = shape_catalogue();
    const auto& z4 = specs[1];
    const auto pair = generate_tensor_pair(z4, 2, 5, false);

    SUBCASE("non-semistable functor context") {
        // single-box shape: the context is the module itself, whose subgroup action
        // is the nontrivial sign character
        std::mt19937_64 rng(8);
        auto E4 = algebra_for_order(4);
        const auto d = character_core_module(z4.shape, z4.homs[2], E4, 2, true, 2, rng);
        CHECK_THROWS_AS(pipeline_sst_schur(d, Partition({1})), ContextNotSemistable);
    }
    SUBCASE("rank guard") {
        std::mt19937_64 rng(2);
        auto E = rational_line_algebra();
        const auto r1 = character_core_module(z4.shape, z4.homs[0], E, 1, true, 2, rng);
        CHECK_THROWS_AS(pipeline_sst_schur(r1, Partition({1, 1})), RankTooSmall);
    }
    SUBCASE("invalid input") {
        auto broken = pair.left;
        broken.rho[0] = broken.rho[0] + broken.rho[0];
        CHECK_THROWS_AS(pipeline_sst_tensor(broken, pair.right), InvalidModule);
    }
    SUBCASE("non-semistable tensor context") {
        // pairing with a trivial module (over the same coefficients) leaves the
        // nontrivial subgroup character of the left factor visible in the tensor
        std::mt19937_64 rng(2);
        const auto triv =
            character_core_module(z4.shape, z4.homs[0], pair.E, 1, true, 2, rng);
        CHECK_THROWS_AS(pipeline_sst_tensor(pair.left, triv), ContextNotSemistable);
    }
}

TEST_CASE("permutation factor exercises non-diagonal semistable actions") {
    const auto specs = shape_catalogue();
    for (const auto& idx : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
        const auto& spec = specs[idx];
        CAPTURE(spec.name);
        auto E = rational_line_algebra();
        const auto perm = permutation_factor_module(spec.shape, E, 2);
        CHECK(validate(perm).ok());
        CHECK(is_semistable(perm));
        CHECK(is_crystalline(perm));
        // the quotient generator genuinely permutes when f > 1
        if (spec.shape->f() > 1)
            CHECK(!perm.rho[static_cast<std::size_t>(spec.shape->omega())].is_identity());
        const auto eta = extract_inertia_character(perm);
        for (int g : spec.shape->inertia()) CHECK(eta.at(g) == E->one());
    }
}
