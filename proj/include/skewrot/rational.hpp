#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace skewrot::squares {

// Exact rational arithmetic for the piecewise-isometric square dynamics.
// Backed by boost::multiprecision (arbitrary precision, auto-reduced,
// positive denominators); the helpers below add the floor/fraction and
// serialization operations the recurrences need.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt floor_rat(const Rational& q) {
    BigInt n = numerator(q);
    BigInt d = denominator(q);  // always > 0
    BigInt quo = n / d;         // truncates toward zero
    if (n < 0 && quo * d != n) --quo;
    return quo;
}

inline Rational frac_rat(const Rational& q) { return q - Rational(floor_rat(q)); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// accepts "p/q", plain integers, and decimal literals (parsed exactly)
Rational parse_rational(const std::string& s);

// canonical "p/q" form (denominator always explicit)
std::string format_rational(const Rational& q);

}  // namespace skewrot::squares
