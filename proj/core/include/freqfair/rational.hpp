#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "freqfair/errors.hpp"

namespace freqfair {

// All frequency ratios are exact rationals; floating point appears only at
// report-emission boundaries.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Canonical reduced form: "num/den", or just "num" for integers.
inline std::string to_fraction_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string to_fraction_string(const std::optional<Rational>& r) {
  return r ? to_fraction_string(*r) : std::string("undefined");
}

// Parses "a/b", an integer, or a plain decimal such as "0.25" (decimals are
// converted exactly, e.g. 0.01 -> 1/100).
Rational rational_from_string(std::string_view text);

// Deterministic rationalization of a double to 9 significant decimal digits.
// Used to pin auto-tolerances to a readable exact value.
inline Rational rational_from_decimal_digits(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.8e", value);
  return rational_from_string(buf);
}

}  // namespace freqfair
