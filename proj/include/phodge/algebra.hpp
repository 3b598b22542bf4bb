#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "phodge/poly.hpp"

namespace phodge {

template <class S>
class AlgebraElem;

// Commutative quotient algebra S[x]/(m) with m monic of degree >= 1. Elements hold
// a shared pointer to their parent; parents compare by modulus value, so two
// independently parsed copies of the same algebra interoperate.
template <class S>
class QuotientAlgebra : public std::enable_shared_from_this<QuotientAlgebra<S>> {
public:
    using Elem = AlgebraElem<S>;
    using Ptr = std::shared_ptr<const QuotientAlgebra<S>>;

    static Ptr create(Poly<S> modulus) {
        if (modulus.degree() < 1)
            throw BadShape("algebra modulus must have degree >= 1");
        if (!scalar_is_one(modulus.leading()))
            throw BadShape("algebra modulus must be monic");
        return Ptr(new QuotientAlgebra(std::move(modulus)));
    }

    const Poly<S>& modulus() const { return modulus_; }
    std::size_t degree() const { return static_cast<std::size_t>(modulus_.degree()); }
    const S& base_exemplar() const { return modulus_.leading(); }

    Elem zero() const { return element(std::vector<S>{}); }
    Elem one() const { return from_base(scalar_one(base_exemplar())); }
    Elem gen() const {
        std::vector<S> c(2, scalar_zero(base_exemplar()));
        c[1] = scalar_one(base_exemplar());
        return element(std::move(c));
    }
    Elem from_base(const S& a) const { return element(std::vector<S>{a}); }
    Elem from_rational(const Rational& q) const {
        return from_base(scalar_from_rational(base_exemplar(), q));
    }
    // Coefficients little-endian; reduced mod the modulus.
    Elem element(std::vector<S> coeffs) const;

    bool same_as(const QuotientAlgebra& o) const {
        return this == &o || modulus_ == o.modulus_;
    }

private:
    explicit QuotientAlgebra(Poly<S> m) : modulus_(std::move(m)) {}
    Poly<S> modulus_;
};

template <class S>
class AlgebraElem {
public:
    using Parent = QuotientAlgebra<S>;

    AlgebraElem(typename Parent::Ptr parent, std::vector<S> coeffs)
        : parent_(std::move(parent)), coeffs_(std::move(coeffs)) {
        if (!parent_) throw BadShape("algebra element without parent");
        reduce();
    }

    const typename Parent::Ptr& parent() const { return parent_; }
    // Always exactly deg(modulus) coefficients, little-endian.
    const std::vector<S>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!scalar_is_zero(c)) return false;
        return true;
    }
    bool is_one() const {
        if (!scalar_is_one(coeffs_[0])) return false;
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (!scalar_is_zero(coeffs_[i])) return false;
        return true;
    }
    bool is_constant() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (!scalar_is_zero(coeffs_[i])) return false;
        return true;
    }
    const S& constant_part() const { return coeffs_[0]; }

    friend AlgebraElem operator+(const AlgebraElem& a, const AlgebraElem& b) {
        a.check_same(b);
        std::vector<S> c = a.coeffs_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + b.coeffs_[i];
        return AlgebraElem(a.parent_, std::move(c));
    }
    friend AlgebraElem operator-(const AlgebraElem& a, const AlgebraElem& b) {
        a.check_same(b);
        std::vector<S> c = a.coeffs_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] - b.coeffs_[i];
        return AlgebraElem(a.parent_, std::move(c));
    }
    AlgebraElem operator-() const {
        std::vector<S> c = coeffs_;
        for (auto& x : c) x = -x;
        return AlgebraElem(parent_, std::move(c));
    }
    friend AlgebraElem operator*(const AlgebraElem& a, const AlgebraElem& b) {
        a.check_same(b);
        Poly<S> p = poly_mul(Poly<S>(a.coeffs_), Poly<S>(b.coeffs_));
        Poly<S> r = poly_mod(p, a.parent_->modulus());
        return AlgebraElem(a.parent_, std::move(r.c));
    }
    friend bool operator==(const AlgebraElem& a, const AlgebraElem& b) {
        a.check_same(b);
        return a.coeffs_ == b.coeffs_;
    }

    AlgebraElem pow(unsigned long e) const {
        AlgebraElem acc = parent_->one();
        AlgebraElem b = *this;
        while (e) {
            if (e & 1) acc = acc * b;
            b = b * b;
            e >>= 1;
        }
        return acc;
    }

    std::string describe() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) os << ", ";
            os << scalar_describe(coeffs_[i]);
        }
        os << "]";
        return os.str();
    }

private:
    void reduce() {
        Poly<S> r = poly_mod(Poly<S>(std::move(coeffs_)), parent_->modulus());
        coeffs_ = std::move(r.c);
        coeffs_.resize(parent_->degree(), scalar_zero(parent_->base_exemplar()));
    }
    void check_same(const AlgebraElem& o) const {
        if (parent_ == o.parent_) return;
        if (!parent_->same_as(*o.parent_))
            throw ParentMismatch("elements of different algebras: " + describe() +
                                 " vs " + o.describe());
    }

    typename Parent::Ptr parent_;
    std::vector<S> coeffs_;
};

template <class S>
typename QuotientAlgebra<S>::Elem QuotientAlgebra<S>::element(std::vector<S> coeffs) const {
    return Elem(this->shared_from_this(), std::move(coeffs));
}

// Inversion by extended Euclid against the modulus. Over a field base this is a
// complete decision procedure; over a non-field base a zero-divisor leading
// coefficient aborts the remainder sequence and we conservatively report NotAUnit.
template <class S>
std::optional<AlgebraElem<S>> algebra_try_invert(const AlgebraElem<S>& a) {
    if (a.is_zero()) return std::nullopt;
    const auto& parent = a.parent();
    auto res = poly_xgcd(Poly<S>(a.coeffs()), parent->modulus());
    if (!res) return std::nullopt;
    const Poly<S>& g = (*res)[0];
    const Poly<S>& s = (*res)[1];
    if (g.degree() != 0) return std::nullopt; // gcd non-constant: genuine non-unit
    auto ginv = scalar_try_invert(g.leading());
    if (!ginv) return std::nullopt;
    Poly<S> inv = poly_scale(*ginv, s);
    return parent->element(std::move(inv.c));
}

template <class S>
AlgebraElem<S> algebra_invert(const AlgebraElem<S>& a) {
    auto r = algebra_try_invert(a);
    if (!r) throw NotAUnit("not a unit: " + a.describe());
    return *r;
}

template <class S>
struct scalar_ops<AlgebraElem<S>> {
    using E = AlgebraElem<S>;
    static E zero(const E& ex) { return ex.parent()->zero(); }
    static E one(const E& ex) { return ex.parent()->one(); }
    static bool is_zero(const E& a) { return a.is_zero(); }
    static bool is_one(const E& a) { return a.is_one(); }
    static std::optional<E> try_invert(const E& a) { return algebra_try_invert(a); }
    static bool is_integer(const E& a) {
        if (!a.is_constant()) return false;
        return scalar_ops<S>::is_integer(a.constant_part());
    }
    static E from_rational(const E& ex, const Rational& q) {
        return ex.parent()->from_rational(q);
    }
    static void flatten(const E& a, std::vector<Rational>& out) {
        for (const auto& c : a.coeffs()) scalar_ops<S>::flatten(c, out);
    }
    static std::string describe(const E& a) { return a.describe(); }
};

template <class S>
std::optional<Rational> scalar_try_rational(const AlgebraElem<S>& a) {
    if (!a.is_constant()) return std::nullopt;
    return scalar_try_rational(a.constant_part());
}

// --- stock algebras ---------------------------------------------------------

inline std::shared_ptr<const QuotientAlgebra<Rational>> rational_line_algebra() {
    // Q[x]/(x): a copy of Q itself, the default coefficient algebra.
    return QuotientAlgebra<Rational>::create(
        Poly<Rational>(std::vector<Rational>{Rational(0), Rational(1)}));
}

inline std::shared_ptr<const QuotientAlgebra<Rational>> dual_number_algebra() {
    // Q[x]/(x^2): x is an exact infinitesimal, handy for derivation checks.
    return QuotientAlgebra<Rational>::create(
        Poly<Rational>(std::vector<Rational>{Rational(0), Rational(0), Rational(1)}));
}

// k-th cyclotomic polynomial over Q, by repeated exact division of x^k - 1.
inline Poly<Rational> cyclotomic_poly(unsigned k) {
    if (k == 0) throw BadShape("cyclotomic index must be positive");
    std::vector<Poly<Rational>> phi(k + 1);
    for (unsigned n = 1; n <= k; ++n) {
        std::vector<Rational> xn(n + 1, Rational(0));
        xn[0] = -1;
        xn[n] = 1;
        Poly<Rational> rem(std::move(xn)); // x^n - 1
        for (unsigned d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            auto qr = poly_divmod(rem, phi[d]);
            if (!qr || !qr->second.is_zero())
                throw BadShape("cyclotomic division failed");
            rem = qr->first;
        }
        phi[n] = rem;
    }
    return phi[k];
}

inline std::shared_ptr<const QuotientAlgebra<Rational>> cyclotomic_algebra(unsigned k) {
    return QuotientAlgebra<Rational>::create(cyclotomic_poly(k));
}

using ElemQ = AlgebraElem<Rational>;
using AlgebraQ = QuotientAlgebra<Rational>;
using ElemExt = AlgebraElem<ElemQ>;      // element of an extension tower E[x]/(m)
using AlgebraExt = QuotientAlgebra<ElemQ>;

} // namespace phodge
