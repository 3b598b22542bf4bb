#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phodge/rational.hpp"

namespace phodge {

// Uniform view of the scalar tower (Rational at the bottom, quotient-algebra and
// etale elements above it). Elements may carry a parent algebra, so zero/one need
// an exemplar of the right parent.
template <class S>
struct scalar_ops; // specialized per scalar type

template <>
struct scalar_ops<Rational> {
    static Rational zero(const Rational&) { return Rational(0); }
    static Rational one(const Rational&) { return Rational(1); }
    static bool is_zero(const Rational& a) { return a == 0; }
    static bool is_one(const Rational& a) { return a == 1; }
    static std::optional<Rational> try_invert(const Rational& a) {
        if (a == 0) return std::nullopt;
        return Rational(1) / a;
    }
    static bool is_integer(const Rational& a) { return phodge::is_integer(a); }
    static Rational from_rational(const Rational&, const Rational& q) { return q; }
    // Flat list of rational coordinates; used for canonical ordering + hashing.
    static void flatten(const Rational& a, std::vector<Rational>& out) { out.push_back(a); }
    static std::string describe(const Rational& a) { return format_rational(a); }
};

template <class S>
S scalar_zero(const S& exemplar) { return scalar_ops<S>::zero(exemplar); }
template <class S>
S scalar_one(const S& exemplar) { return scalar_ops<S>::one(exemplar); }
template <class S>
bool scalar_is_zero(const S& a) { return scalar_ops<S>::is_zero(a); }
template <class S>
bool scalar_is_one(const S& a) { return scalar_ops<S>::is_one(a); }
template <class S>
std::optional<S> scalar_try_invert(const S& a) { return scalar_ops<S>::try_invert(a); }
template <class S>
bool scalar_is_integer(const S& a) { return scalar_ops<S>::is_integer(a); }
template <class S>
std::vector<Rational> scalar_flatten(const S& a) {
    std::vector<Rational> out;
    scalar_ops<S>::flatten(a, out);
    return out;
}
template <class S>
std::string scalar_describe(const S& a) { return scalar_ops<S>::describe(a); }

template <class S>
S scalar_invert(const S& a) {
    auto r = scalar_try_invert(a);
    if (!r) throw NotAUnit("element is not invertible: " + scalar_describe(a));
    return *r;
}

// Total order on scalars via flattened rational coordinates (lexicographic).
// Only used for canonical sorting; it is not compatible with arithmetic.
template <class S>
bool scalar_flat_less(const S& a, const S& b) {
    auto fa = scalar_flatten(a), fb = scalar_flatten(b);
    return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end());
}

template <class S>
S scalar_from_rational(const S& exemplar, const Rational& q) {
    return scalar_ops<S>::from_rational(exemplar, q);
}

// The rational a scalar equals, when it lies in the prime subfield.
inline std::optional<Rational> scalar_try_rational(const Rational& a) { return a; }

} // namespace phodge
