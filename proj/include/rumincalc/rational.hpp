#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "errors.hpp"

namespace rumincalc {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. cpp_rational keeps the canonical representation
// (lowest terms, positive denominator) after every operation.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational(long long num, long long den = 1) {
    if (den == 0) throw RuminError("zero denominator");
    return Rational(BigInt(num)) / Rational(BigInt(den));
}

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, long long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) throw RuminError("zero to a negative power");
    Rational acc(1), b = exp > 0 ? base : Rational(1) / base;
    for (long long e = exp > 0 ? exp : -exp; e > 0; e >>= 1) {
        if (e & 1) acc *= b;
        b *= b;
    }
    return acc;
}

inline std::string format_rational(const Rational& q) {
    std::string s = numerator_of(q).str();
    if (denominator_of(q) != 1) s += "/" + denominator_of(q).str();
    return s;
}

// Accepts "p" or "p/q" with optional leading sign on p; q must be positive digits.
// pos_base is folded into the reported position so callers embedded in a larger
// expression can report absolute offsets.
inline Rational parse_rational(const std::string& s, int pos_base = 0) {
    auto fail = [&](const std::string& m) -> Rational { throw FormParseError(pos_base, m + ": '" + s + "'"); };
    if (s.empty()) return fail("empty rational");
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    std::size_t num_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_begin) return fail("malformed rational");
    BigInt num(s.substr(0, i));
    BigInt den(1);
    if (i < s.size()) {
        if (s[i] != '/') return fail("malformed rational");
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_begin || i != s.size()) return fail("malformed rational");
        den = BigInt(s.substr(den_begin));
        if (den == 0) return fail("zero denominator");
    }
    return Rational(num, den);
}

}  // namespace rumincalc
