#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace cayfire {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" (or "p" when q == 1); the exact, locale-independent form used in
/// CSV output.
inline std::string to_fraction_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

/// Fixed-point decimal rendering, round-half-away-from-zero, locale
/// independent. For human-facing columns only; exact values travel as
/// fractions.
inline std::string to_decimal_string(const Rational& r, int digits = 6) {
  BigInt num = numerator(r), den = denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = (num * scale * 2 + den) / (den * 2);  // round half up
  BigInt ip = scaled / scale, fp = scaled % scale;
  std::string out = (neg && scaled != 0) ? "-" : "";
  out += ip.str();
  if (digits > 0) {
    std::string f = fp.str();
    out += "." + std::string(static_cast<size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

}  // namespace cayfire
