#include <doctest.h>

#include <random>

#include "phodge/algebra.hpp"
#include "phodge/etale.hpp"
#include "phodge/matrix.hpp"

using namespace phodge;

TEST_CASE("rational parse and format round trip") {
    CHECK(format_rational(parse_rational("3/4")) == "3/4");
    CHECK(format_rational(parse_rational("-3/4")) == "-3/4");
    CHECK(format_rational(parse_rational("6/4")) == "3/2");
    CHECK(format_rational(parse_rational("4/2")) == "2");
    CHECK(format_rational(parse_rational("0")) == "0");
    CHECK(format_rational(parse_rational(" 7 ")) == "7");
    CHECK(format_rational(parse_rational("3/-6")) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("a"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("rational floor and fractional part") {
    CHECK(rational_floor(Rational(7, 2)) == 3);
    CHECK(rational_floor(Rational(-7, 2)) == -4);
    CHECK(rational_floor(Rational(4)) == 4);
    CHECK(rational_floor(Rational(-4)) == -4);
    CHECK(frac_part(Rational(-7, 2)) == Rational(1, 2));
    CHECK(frac_part(Rational(5)) == 0);
}

TEST_CASE("denominator exponent extracts the prime part") {
    CHECK(denominator_exponent(Rational(3, 4), 2) == 2);
    CHECK(denominator_exponent(Rational(1, 3), 2) == 0);
    CHECK(denominator_exponent(Rational(1, 6), 2) == 1);
    CHECK(denominator_exponent(Rational(5), 7) == 0);
    CHECK(denominator_exponent(Rational(1, 49), 7) == 2);
    CHECK(denominator_exponent(Rational(0), 3) == 0);
}

TEST_CASE("algebra inversion: identity, imaginary unit, zero divisor") {
    auto gauss = cyclotomic_algebra(4); // x^2 + 1
    CHECK(algebra_invert(gauss->one()) == gauss->one());
    CHECK(algebra_invert(gauss->gen()) == -gauss->gen()); // x * (-x) = 1

    auto split = QuotientAlgebra<Rational>::create(
        Poly<Rational>(std::vector<Rational>{0, -1, 1})); // x^2 - x
    CHECK_THROWS_AS(algebra_invert(split->gen()), NotAUnit);
    CHECK_THROWS_AS(algebra_invert(split->zero()), NotAUnit);
}

TEST_CASE("double inversion is the identity on units") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coef(-5, 5);
    auto alg = cyclotomic_algebra(5); // degree 4, a field
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> c(4);
        for (auto& x : c) x = coef(rng);
        ElemQ a = alg->element(c);
        if (a.is_zero()) continue;
        ElemQ b = algebra_invert(a);
        CHECK((a * b).is_one());
        CHECK(algebra_invert(b) == a);
    }
}

TEST_CASE("cyclotomic polynomials come out right") {
    auto as_vec = [](const Poly<Rational>& p) { return p.c; };
    CHECK(as_vec(cyclotomic_poly(1)) == std::vector<Rational>{-1, 1});
    CHECK(as_vec(cyclotomic_poly(2)) == std::vector<Rational>{1, 1});
    CHECK(as_vec(cyclotomic_poly(3)) == std::vector<Rational>{1, 1, 1});
    CHECK(as_vec(cyclotomic_poly(4)) == std::vector<Rational>{1, 0, 1});
    CHECK(as_vec(cyclotomic_poly(6)) == std::vector<Rational>{1, -1, 1});
    CHECK(as_vec(cyclotomic_poly(5)) == std::vector<Rational>{1, 1, 1, 1, 1});
}

TEST_CASE("dual numbers square to zero") {
    auto dual = dual_number_algebra();
    ElemQ eps = dual->gen();
    CHECK((eps * eps).is_zero());
    CHECK_THROWS_AS(algebra_invert(eps), NotAUnit);
    CHECK(algebra_invert(dual->one() + eps) == dual->one() - eps);
}

TEST_CASE("cyclic shift convention and examples") {
    auto q = rational_line_algebra();
    auto a = q->from_rational(1), b = q->from_rational(2), c = q->from_rational(3);
    EtaleElem<ElemQ> v(std::vector<ElemQ>{a, b, c});
    EtaleElem<ElemQ> s1 = shift_apply(v, 1);
    CHECK(s1.comp(0) == c);
    CHECK(s1.comp(1) == a);
    CHECK(s1.comp(2) == b);
    CHECK(shift_apply(v, 0) == v);
    CHECK(shift_apply(v, 3) == v);
    CHECK(shift_apply(v, -1) == shift_apply(v, 2));
}

TEST_CASE("shift is a ring automorphism of exact order f") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-4, 4);
    auto base = cyclotomic_algebra(4);
    const std::size_t f = 3;
    auto rand_elem = [&]() {
        std::vector<ElemQ> comps;
        for (std::size_t i = 0; i < f; ++i)
            comps.push_back(base->element({Rational(coef(rng)), Rational(coef(rng))}));
        return EtaleElem<ElemQ>(std::move(comps));
    };
    for (int trial = 0; trial < 30; ++trial) {
        auto x = rand_elem(), y = rand_elem();
        CHECK(shift_apply(x * y, 1) == shift_apply(x, 1) * shift_apply(y, 1));
        CHECK(shift_apply(x + y, 1) == shift_apply(x, 1) + shift_apply(y, 1));
        CHECK(shift_apply(shift_apply(shift_apply(x, 1), 1), 1) == x);
    }
    // order exactly f: some element moves under a single shift
    auto probe = EtaleElem<ElemQ>(std::vector<ElemQ>{base->one(), base->zero(), base->zero()});
    CHECK(!(shift_apply(probe, 1) == probe));
}

TEST_CASE("fixed points of the shift are the diagonal") {
    SUBCASE("f=3 over the rational line") {
        EtaleAlgebra alg(rational_line_algebra(), 3);
        auto basis = fixed_points_shift(alg);
        REQUIRE(basis.size() == 1);
        CHECK(basis[0].is_diagonal());
        CHECK(!basis[0].is_zero());
    }
    SUBCASE("f=1 fixes everything") {
        EtaleAlgebra alg(cyclotomic_algebra(4), 1);
        auto basis = fixed_points_shift(alg);
        CHECK(basis.size() == 2); // dim of E itself
    }
    SUBCASE("f=2 over a quadratic field") {
        EtaleAlgebra alg(cyclotomic_algebra(4), 2);
        auto basis = fixed_points_shift(alg);
        REQUIRE(basis.size() == 2);
        for (const auto& v : basis) {
            CHECK(v.is_diagonal());
            CHECK(shift_apply(v, 1) == v);
        }
    }
}

TEST_CASE("matrix arithmetic and inverse over the rationals") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + trial % 4;
        Matrix<Rational> m = Matrix<Rational>::zeros(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = coef(rng);
        auto inv = try_inverse(m);
        if (!inv) {
            CHECK(rank(m) < n);
            continue;
        }
        CHECK((m * *inv).is_identity());
        CHECK((*inv * m).is_identity());
        CHECK(rank(m) == n);
    }
}

TEST_CASE("kernel and solve are consistent") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + trial % 3, cols = 1 + (trial / 3) % 4;
        Matrix<Rational> m = Matrix<Rational>::zeros(rows, cols, Rational(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = coef(rng);
        auto ker = kernel_basis(m);
        CHECK(ker.size() == cols - rank(m));
        for (const auto& v : ker) {
            for (std::size_t i = 0; i < rows; ++i) {
                Rational acc = 0;
                for (std::size_t j = 0; j < cols; ++j) acc += m.at(i, j) * v[j];
                CHECK(acc == 0);
            }
        }
        // solve against a right-hand side known to be consistent
        std::vector<Rational> probe(cols, Rational(1));
        std::vector<Rational> rhs(rows, Rational(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) rhs[i] += m.at(i, j) * probe[j];
        auto x = solve(m, rhs);
        REQUIRE(x.has_value());
        for (std::size_t i = 0; i < rows; ++i) {
            Rational acc = 0;
            for (std::size_t j = 0; j < cols; ++j) acc += m.at(i, j) * (*x)[j];
            CHECK(acc == rhs[i]);
        }
    }
}

TEST_CASE("elimination survives zero-divisor pivots when a unit combination exists") {
    auto split = QuotientAlgebra<Rational>::create(
        Poly<Rational>(std::vector<Rational>{-1, 0, 1})); // x^2 - 1, zero divisors x±1
    ElemQ x = split->gen(), one = split->one();
    // [[x+1, x-1], [x-1, x+1]] has determinant 4x, a unit, but every entry is a
    // zero divisor; inversion must combine rows to find a pivot.
    Matrix<ElemQ> m(2, 2, std::vector<ElemQ>{x + one, x - one, x - one, x + one});
    Matrix<ElemQ> inv = inverse(m);
    CHECK((m * inv).is_identity());
    CHECK((inv * m).is_identity());
}

TEST_CASE("nilpotent block structure: fixed examples") {
    Matrix<Rational> z = Matrix<Rational>::zeros(3, 3, Rational(0));
    auto bz = nilpotent_block_structure(z);
    CHECK(bz == std::map<std::size_t, std::size_t>{{1, 3}});

    Matrix<Rational> j3 = Matrix<Rational>::zeros(3, 3, Rational(0));
    j3.at(0, 1) = 1;
    j3.at(1, 2) = 1;
    auto b3 = nilpotent_block_structure(j3);
    CHECK(b3 == std::map<std::size_t, std::size_t>{{3, 1}});

    // J2 (x) I + I (x) J2 on 4 dims splits as sizes {3, 1}
    Matrix<Rational> j2 = Matrix<Rational>::zeros(2, 2, Rational(0));
    j2.at(0, 1) = 1;
    Matrix<Rational> id2 = Matrix<Rational>::identity(2, Rational(0));
    Matrix<Rational> mix = kron(j2, id2) + kron(id2, j2);
    auto bm = nilpotent_block_structure(mix);
    CHECK(bm == std::map<std::size_t, std::size_t>{{1, 1}, {3, 1}});

    Matrix<Rational> notnil = Matrix<Rational>::identity(2, Rational(0));
    CHECK_THROWS_AS(nilpotent_block_structure(notnil), NotNilpotent);
}

TEST_CASE("nilpotent block structure agrees with kernel dimensions") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 7; // up to 8
        Matrix<Rational> m = Matrix<Rational>::zeros(n, n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) m.at(i, j) = coef(rng);
        auto blocks = nilpotent_block_structure(m);
        // oracle: kernel dimensions of powers
        std::vector<std::size_t> kd{0};
        Matrix<Rational> p = Matrix<Rational>::identity(n, Rational(0));
        for (std::size_t k = 1; k <= n + 1; ++k) {
            p = p * m;
            kd.push_back(n - rank(p));
        }
        std::size_t total = 0;
        for (std::size_t s = 1; s <= n; ++s) {
            const std::size_t mult = (kd[s] - kd[s - 1]) - (kd[s + 1] - kd[s]);
            auto it = blocks.find(s);
            CHECK((it == blocks.end() ? 0u : it->second) == mult);
            total += mult * s;
        }
        CHECK(total == n);
    }
}

TEST_CASE("extension tower elements over a quadratic base") {
    auto e = cyclotomic_algebra(4); // E = Q(i)
    // F = E[y]/(y^2 - i): y^4 = -1
    auto f = QuotientAlgebra<ElemQ>::create(
        Poly<ElemQ>(std::vector<ElemQ>{-e->gen(), e->zero(), e->one()}));
    ElemExt y = f->gen();
    ElemExt y4 = y.pow(4);
    CHECK(y4 == -f->one());
    ElemExt inv = algebra_invert(y);
    CHECK((y * inv).is_one());
}
