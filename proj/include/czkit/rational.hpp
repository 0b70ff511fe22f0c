#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "czkit/common.hpp"

namespace czkit {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational numbers. cpp_rational keeps the canonical form we rely on
// everywhere: gcd(|num|, den) = 1, den > 0, zero stored as 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw division_by_zero("rational with zero denominator");
    return Rational(num, den);
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline int rat_sign(const Rational& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

inline Rational rat_pow(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw division_by_zero("0 raised to a negative power");
        return Rational(1) / rat_pow(base, -e);
    }
    Rational acc(1), b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline double rat_to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt factorial(long m) {
    if (m < 0) throw index_out_of_range("factorial of negative integer");
    BigInt acc = 1;
    for (long k = 2; k <= m; ++k) acc *= k;
    return acc;
}

// (2m-1)!! with the empty-product conventions (-1)!! = 1!! = 1.
inline BigInt odd_double_factorial(long m) {
    BigInt acc = 1;
    for (long k = 1; k <= m; ++k) acc *= 2 * k - 1;
    return acc;
}

// Generalized binomial coefficient binom(a, k) = a(a-1)...(a-k+1)/k! for any
// rational a; binom(a, k) = 0 for k < 0. Several combinatorial identities in
// this library silently rely on both conventions.
inline Rational binomial(const Rational& a, long k) {
    if (k < 0) return Rational(0);
    Rational acc(1);
    for (long i = 0; i < k; ++i) acc *= (a - i) / Rational(i + 1);
    return acc;
}

inline Rational binomial(long a, long k) { return binomial(Rational(a), k); }

// Falling factorial a(a-1)...(a-k+1).
inline Rational falling_factorial(const Rational& a, long k) {
    Rational acc(1);
    for (long i = 0; i < k; ++i) acc *= (a - i);
    return acc;
}

inline std::string rat_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

// Accepts "p" or "p/q" with optional sign and surrounding whitespace.
inline Rational rat_parse(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw validation_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const division_by_zero&) {
        throw;
    } catch (const std::exception&) {
        throw validation_error("malformed rational literal: '" + text + "'");
    }
}

}  // namespace czkit
