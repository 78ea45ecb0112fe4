#include "freqfair/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace freqfair {

Rational rational_from_string(std::string_view text) {
  auto fail = [&] {
    throw InputError(ErrorCode::invalid_probability,
                     "cannot parse rational from '" + std::string(text) + "'");
  };
  if (text.empty()) fail();

  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string num(text.substr(0, slash));
    std::string den(text.substr(slash + 1));
    if (num.empty() || den.empty()) fail();
    try {
      BigInt n(num), d(den);
      if (d == 0) fail();
      return Rational(n, d);
    } catch (const std::runtime_error&) {
      fail();
    }
  }

  // Plain decimal, optionally signed, optionally with exponent: -12.34e-5
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt mantissa = 0;
  long frac_digits = 0;
  long exponent = 0;
  bool any_digit = false;
  bool seen_dot = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == '.') {
      if (seen_dot) fail();
      seen_dot = true;
    } else if (c == 'e' || c == 'E') {
      ++pos;
      bool exp_neg = false;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        exp_neg = text[pos] == '-';
        ++pos;
      }
      bool exp_digit = false;
      for (; pos < text.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail();
        exponent = exponent * 10 + (text[pos] - '0');
        exp_digit = true;
      }
      if (!exp_digit) fail();
      if (exp_neg) exponent = -exponent;
      break;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_dot) ++frac_digits;
      any_digit = true;
    } else {
      fail();
    }
  }
  if (!any_digit) fail();

  Rational value(mantissa);
  long shift = exponent - frac_digits;
  if (shift > 0) value *= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift)));
  if (shift < 0) value /= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift)));
  return negative ? -value : value;
}

}  // namespace freqfair
