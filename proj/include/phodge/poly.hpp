#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "phodge/scalar.hpp"

namespace phodge {

// Dense univariate polynomial over S, little-endian coefficients, normalized so the
// leading coefficient is nonzero (the zero polynomial has no coefficients).
template <class S>
struct Poly {
    std::vector<S> c;

    Poly() = default;
    explicit Poly(std::vector<S> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && scalar_is_zero(c.back())) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    long degree() const { return static_cast<long>(c.size()) - 1; }
    const S& leading() const { return c.back(); }

    bool operator==(const Poly& o) const {
        if (c.size() != o.c.size()) return false;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!(c[i] == o.c[i])) return false;
        return true;
    }
};

template <class S>
Poly<S> poly_constant(const S& a) {
    if (scalar_is_zero(a)) return Poly<S>{};
    return Poly<S>(std::vector<S>{a});
}

template <class S>
Poly<S> poly_add(const Poly<S>& a, const Poly<S>& b) {
    std::vector<S> out = a.c;
    if (b.c.size() > out.size()) {
        const S& ex = b.c.front();
        out.resize(b.c.size(), scalar_zero(ex));
    }
    for (std::size_t i = 0; i < b.c.size(); ++i) out[i] = out[i] + b.c[i];
    return Poly<S>(std::move(out));
}

template <class S>
Poly<S> poly_neg(const Poly<S>& a) {
    std::vector<S> out = a.c;
    for (auto& x : out) x = -x;
    return Poly<S>(std::move(out));
}

template <class S>
Poly<S> poly_sub(const Poly<S>& a, const Poly<S>& b) { return poly_add(a, poly_neg(b)); }

template <class S>
Poly<S> poly_mul(const Poly<S>& a, const Poly<S>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<S>{};
    const S zero = scalar_zero(a.c.front());
    std::vector<S> out(a.c.size() + b.c.size() - 1, zero);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (scalar_is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            out[i + j] = out[i + j] + a.c[i] * b.c[j];
    }
    return Poly<S>(std::move(out));
}

template <class S>
Poly<S> poly_scale(const S& s, const Poly<S>& a) {
    std::vector<S> out = a.c;
    for (auto& x : out) x = s * x;
    return Poly<S>(std::move(out));
}

// Division with remainder. Requires the leading coefficient of b to be invertible;
// returns nullopt when it is not (possible over non-field scalars).
template <class S>
std::optional<std::pair<Poly<S>, Poly<S>>> poly_divmod(const Poly<S>& a, const Poly<S>& b) {
    if (b.is_zero()) throw BadShape("polynomial division by zero");
    auto lead_inv = scalar_try_invert(b.leading());
    if (!lead_inv) return std::nullopt;
    Poly<S> rem = a;
    if (a.degree() < b.degree()) return std::make_pair(Poly<S>{}, rem);
    const S zero = scalar_zero(b.leading());
    std::vector<S> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, zero);
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(rem.degree() - b.degree());
        S coef = rem.leading() * (*lead_inv);
        q[shift] = q[shift] + coef;
        // rem -= coef * x^shift * b
        std::vector<S> rc = rem.c;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            rc[i + shift] = rc[i + shift] - coef * b.c[i];
        rem = Poly<S>(std::move(rc));
    }
    return std::make_pair(Poly<S>(std::move(q)), rem);
}

template <class S>
Poly<S> poly_mod(const Poly<S>& a, const Poly<S>& b) {
    auto qr = poly_divmod(a, b);
    if (!qr) throw NotAUnit("leading coefficient not invertible in polynomial reduction");
    return qr->second;
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, or nullopt when a leading
// coefficient of some remainder is not invertible (only possible over non-fields).
template <class S>
std::optional<std::array<Poly<S>, 3>> poly_xgcd(const Poly<S>& a, const Poly<S>& b) {
    const S* ex = nullptr;
    if (!a.is_zero()) ex = &a.c.front();
    else if (!b.is_zero()) ex = &b.c.front();
    else throw BadShape("gcd(0, 0) undefined");
    const S one = scalar_one(*ex);

    Poly<S> r0 = a, r1 = b;
    Poly<S> s0 = poly_constant(one), s1 = Poly<S>{};
    Poly<S> t0 = Poly<S>{}, t1 = poly_constant(one);
    while (!r1.is_zero()) {
        auto qr = poly_divmod(r0, r1);
        if (!qr) return std::nullopt;
        Poly<S> q = qr->first;
        Poly<S> r2 = qr->second;
        Poly<S> s2 = poly_sub(s0, poly_mul(q, s1));
        Poly<S> t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    return std::array<Poly<S>, 3>{r0, s0, t0};
}

} // namespace phodge
