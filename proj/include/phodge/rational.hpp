#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "phodge/errors.hpp"

namespace phodge {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

// Largest integer <= q.
inline Int rational_floor(const Rational& q) {
    Int n = num(q), d = den(q);
    Int t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

// Fractional part in [0, 1).
inline Rational frac_part(const Rational& q) { return q - Rational(rational_floor(q)); }

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return 1;
    Rational b = base;
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    Rational acc = 1;
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    if (neg) {
        if (acc == 0) throw NotAUnit("0 has no negative power");
        acc = Rational(1) / acc;
    }
    return acc;
}

// "p/q" or "p", optional leading '-', no whitespace tolerance beyond trimming.
inline Rational parse_rational(const std::string& raw) {
    auto first = raw.find_first_not_of(" \t\r\n");
    auto last = raw.find_last_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty rational literal");
    std::string s = raw.substr(first, last - first + 1);
    auto slash = s.find('/');
    auto check_int = [&](const std::string& t) {
        if (t.empty()) throw ParseError("bad rational literal: " + raw);
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw ParseError("bad rational literal: " + raw);
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw ParseError("bad rational literal: " + raw);
    };
    try {
        if (slash == std::string::npos) {
            check_int(s);
            return Rational(Int(s));
        }
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        check_int(a);
        check_int(b);
        Int n(a), d(b);
        if (d == 0) throw ParseError("zero denominator: " + raw);
        if (d < 0) { n = -n; d = -d; }
        return Rational(n, d);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad rational literal: ") + raw + " (" + e.what() + ")");
    }
}

// Canonical form: lowest terms, denominator positive, "p" when integral else "p/q".
inline std::string format_rational(const Rational& q) {
    if (is_integer(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

// Smallest n >= 0 such that p^n * q has denominator coprime to p (p >= 2).
// For prime p this is max(0, -v_p(q)).
inline long denominator_exponent(const Rational& q, const Int& p) {
    if (p < 2) throw BadShape("prime parameter must be >= 2");
    long n = 0;
    Rational w = q;
    while (boost::multiprecision::gcd(den(w), p) != 1) {
        w *= Rational(p);
        ++n;
    }
    return n;
}

} // namespace phodge
