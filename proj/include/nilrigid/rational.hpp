#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "nilrigid/errors.hpp"

namespace nilrigid {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline int sign_of(const Rational& r) { return r.sign(); }

inline Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Largest integer <= r, returned as an exact rational.
inline Rational rational_floor(const Rational& r) {
    BigInt num = numerator(r), den = denominator(r);
    BigInt q = num / den; // truncates toward zero
    if (num < 0 && q * den != num) q -= 1;
    return Rational(q);
}

// Total order on the canonical (numerator, denominator) representation.
// It agrees with equality (canonical forms are unique) but not with numeric
// order.  Containers should key on it instead of operator<: comparing
// rationals by value expands continued fractions term by term, which
// degenerates badly when keys share long expansions (orbits of a hyperbolic
// matrix are convergents of the same quadratic irrational), while integer
// comparison decides at the most significant limb.
inline int rep_compare(const Rational& a, const Rational& b) {
    const auto& ra = a.backend().data();
    const auto& rb = b.backend().data();
    const int by_num = ra.numerator().compare(rb.numerator());
    if (by_num != 0) return by_num;
    return ra.denominator().compare(rb.denominator());
}

// True when the reduced numerator or denominator needs more than `bits` bits.
// Orbit searches use this as a work budget: exact arithmetic on coordinates
// that grow along divergent chains would otherwise dominate the run time.
inline bool height_exceeds(const Rational& r, unsigned bits) {
    const BigInt num = boost::multiprecision::abs(numerator(r));
    if (num != 0 && boost::multiprecision::msb(num) >= bits) return true;
    const BigInt den = denominator(r);
    return boost::multiprecision::msb(den) >= bits;
}

// Parses "p", "-p" or "p/q" with optional surrounding whitespace. Throws FormatError.
Rational parse_rational(const std::string& text);

// Canonical reduced form: "p" when the denominator is 1, otherwise "p/q" with q > 0.
std::string format_rational(const Rational& r);

} // namespace nilrigid
