#pragma once

#include <vector>

#include "phodge/algebra.hpp"
#include "phodge/matrix.hpp"

namespace phodge {

// Element of a product algebra S^f (componentwise operations). The cyclic shift
// sends component i to component i+1: (shift v)[i] = v[i-1 mod f], so
// shift((a,b,c), 1) = (c,a,b).
template <class S>
class EtaleElem {
public:
    explicit EtaleElem(std::vector<S> comps) : comps_(std::move(comps)) {
        if (comps_.empty()) throw BadShape("etale element needs at least one component");
    }
    static EtaleElem diagonal(std::size_t f, const S& a) {
        return EtaleElem(std::vector<S>(f, a));
    }

    std::size_t arity() const { return comps_.size(); }
    const std::vector<S>& comps() const { return comps_; }
    const S& comp(std::size_t i) const { return comps_[i]; }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!scalar_is_zero(c)) return false;
        return true;
    }
    bool is_one() const {
        for (const auto& c : comps_)
            if (!scalar_is_one(c)) return false;
        return true;
    }
    // True when all components agree (image of the diagonal embedding).
    bool is_diagonal() const {
        for (std::size_t i = 1; i < comps_.size(); ++i)
            if (!(comps_[i] == comps_[0])) return false;
        return true;
    }

    EtaleElem shifted(long k) const {
        const long f = static_cast<long>(comps_.size());
        std::vector<S> out;
        out.reserve(comps_.size());
        for (long i = 0; i < f; ++i) {
            long j = ((i - k) % f + f) % f;
            out.push_back(comps_[static_cast<std::size_t>(j)]);
        }
        return EtaleElem(std::move(out));
    }

    friend EtaleElem operator+(const EtaleElem& a, const EtaleElem& b) {
        a.check_same(b);
        std::vector<S> c;
        c.reserve(a.comps_.size());
        for (std::size_t i = 0; i < a.comps_.size(); ++i) c.push_back(a.comps_[i] + b.comps_[i]);
        return EtaleElem(std::move(c));
    }
    friend EtaleElem operator-(const EtaleElem& a, const EtaleElem& b) {
        a.check_same(b);
        std::vector<S> c;
        c.reserve(a.comps_.size());
        for (std::size_t i = 0; i < a.comps_.size(); ++i) c.push_back(a.comps_[i] - b.comps_[i]);
        return EtaleElem(std::move(c));
    }
    EtaleElem operator-() const {
        std::vector<S> c;
        c.reserve(comps_.size());
        for (const auto& x : comps_) c.push_back(-x);
        return EtaleElem(std::move(c));
    }
    friend EtaleElem operator*(const EtaleElem& a, const EtaleElem& b) {
        a.check_same(b);
        std::vector<S> c;
        c.reserve(a.comps_.size());
        for (std::size_t i = 0; i < a.comps_.size(); ++i) c.push_back(a.comps_[i] * b.comps_[i]);
        return EtaleElem(std::move(c));
    }
    friend bool operator==(const EtaleElem& a, const EtaleElem& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.comps_.size(); ++i)
            if (!(a.comps_[i] == b.comps_[i])) return false;
        return true;
    }

    std::string describe() const {
        std::string s = "(";
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (i) s += ", ";
            s += scalar_describe(comps_[i]);
        }
        return s + ")";
    }

private:
    void check_same(const EtaleElem& o) const {
        if (comps_.size() != o.comps_.size())
            throw ParentMismatch("etale elements of different arity");
    }
    std::vector<S> comps_;
};

template <class S>
EtaleElem<S> shift_apply(const EtaleElem<S>& v, long k) {
    return v.shifted(k);
}

// Product algebra E^f with the cyclic shift automorphism.
struct EtaleAlgebra {
    std::shared_ptr<const AlgebraQ> base;
    std::size_t arity;

    EtaleAlgebra(std::shared_ptr<const AlgebraQ> b, std::size_t f) : base(std::move(b)), arity(f) {
        if (!base) throw BadShape("etale algebra needs a base");
        if (arity < 1) throw BadShape("etale arity must be >= 1");
    }

    EtaleElem<ElemQ> zero() const { return EtaleElem<ElemQ>::diagonal(arity, base->zero()); }
    EtaleElem<ElemQ> one() const { return EtaleElem<ElemQ>::diagonal(arity, base->one()); }
    EtaleElem<ElemQ> diagonal(const ElemQ& a) const { return EtaleElem<ElemQ>::diagonal(arity, a); }
    EtaleElem<ElemQ> element(std::vector<ElemQ> comps) const {
        if (comps.size() != arity) throw BadShape("etale component count mismatch");
        return EtaleElem<ElemQ>(std::move(comps));
    }
};

// Basis of {v in E^f : shift(v) = v}: always the diagonal copy of E, computed
// honestly as the kernel of (shift - id) on the underlying rational vector
// space of dimension f * deg(E).
inline std::vector<EtaleElem<ElemQ>> fixed_points_shift(const EtaleAlgebra& alg) {
    const std::size_t f = alg.arity;
    const std::size_t deg = alg.base->degree();
    const std::size_t n = f * deg;
    // coordinates: index (component i, coefficient k) -> i*deg + k
    Matrix<Rational> m = Matrix<Rational>::zeros(n, n, Rational(0));
    for (std::size_t i = 0; i < f; ++i)
        for (std::size_t k = 0; k < deg; ++k) {
            const std::size_t src = i * deg + k;
            const std::size_t dst = ((i + 1) % f) * deg + k; // shift sends comp i to i+1
            m.at(dst, src) = m.at(dst, src) + 1;
            m.at(src, src) = m.at(src, src) - 1;
        }
    std::vector<EtaleElem<ElemQ>> basis;
    for (const auto& v : kernel_basis(m)) {
        std::vector<ElemQ> comps;
        for (std::size_t i = 0; i < f; ++i) {
            std::vector<Rational> coeffs(v.begin() + static_cast<long>(i * deg),
                                         v.begin() + static_cast<long>((i + 1) * deg));
            comps.push_back(alg.base->element(std::move(coeffs)));
        }
        basis.emplace_back(std::move(comps));
    }
    return basis;
}

template <class S>
struct scalar_ops<EtaleElem<S>> {
    using E = EtaleElem<S>;
    static E zero(const E& ex) {
        return E::diagonal(ex.arity(), scalar_ops<S>::zero(ex.comp(0)));
    }
    static E one(const E& ex) {
        return E::diagonal(ex.arity(), scalar_ops<S>::one(ex.comp(0)));
    }
    static bool is_zero(const E& a) { return a.is_zero(); }
    static bool is_one(const E& a) { return a.is_one(); }
    static std::optional<E> try_invert(const E& a) {
        std::vector<S> inv;
        inv.reserve(a.arity());
        for (const auto& c : a.comps()) {
            auto r = scalar_ops<S>::try_invert(c);
            if (!r) return std::nullopt; // a zero component makes it a zero divisor
            inv.push_back(std::move(*r));
        }
        return E(std::move(inv));
    }
    static bool is_integer(const E& a) {
        for (const auto& c : a.comps())
            if (!scalar_ops<S>::is_integer(c)) return false;
        return true;
    }
    static E from_rational(const E& ex, const Rational& q) {
        return E::diagonal(ex.arity(), scalar_ops<S>::from_rational(ex.comp(0), q));
    }
    static void flatten(const E& a, std::vector<Rational>& out) {
        for (const auto& c : a.comps()) scalar_ops<S>::flatten(c, out);
    }
    static std::string describe(const E& a) { return a.describe(); }
};

} // namespace phodge
