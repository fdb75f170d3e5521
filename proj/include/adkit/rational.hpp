#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace adkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

BigInt floor_div(const Rational& x);
BigInt ceil_div(const Rational& x);

// Saturating conversions; negative values clamp to 0.
std::uint64_t floor_u64(const Rational& x);
std::uint64_t ceil_u64(const Rational& x);

double to_double(const Rational& x);

/// "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& x);

/// Accepts "3", "3/4", "0.125", "-1/2". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

}  // namespace adkit
