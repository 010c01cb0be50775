#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mgame {

// Exact rational number. All payoff and weight arithmetic goes through this
// type; mpq_class keeps values canonical after every arithmetic operation.
using Rational = mpq_class;

// Accepts "7", "-3", "2.5", "-0.125", "1e-3" is rejected; "p/q" with q != 0.
// The result is canonical.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

// Fixed-point decimal rendering, rounded half away from zero.
std::string to_decimal(const Rational& value, int places);

double to_double(const Rational& value);

// num/den in lowest terms. The two-argument mpq_class constructor does not
// canonicalize, so computed fractions should come through here.
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool in_unit_interval(const Rational& value) {
  return value >= 0 && value <= 1;
}

}  // namespace mgame
