#include "adkit/rational.hpp"

#include <cctype>
#include <limits>

#include "adkit/error.hpp"

namespace adkit {

namespace mp = boost::multiprecision;

BigInt floor_div(const Rational& x) {
  BigInt num = mp::numerator(x);
  BigInt den = mp::denominator(x);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil_div(const Rational& x) { return -floor_div(-x); }

namespace {

std::uint64_t saturate(const BigInt& v) {
  if (v <= 0) return 0;
  if (v >= BigInt(std::numeric_limits<std::uint64_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return v.convert_to<std::uint64_t>();
}

}  // namespace

std::uint64_t floor_u64(const Rational& x) { return saturate(floor_div(x)); }
std::uint64_t ceil_u64(const Rational& x) { return saturate(ceil_div(x)); }

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::string to_string(const Rational& x) {
  const BigInt& num = mp::numerator(x);
  const BigInt& den = mp::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw ParseError("malformed rational '" + std::string(text) + "'", 0); };
  if (text.empty()) fail();

  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    ++i;
  }
  auto digits = [&](std::size_t& pos, BigInt& out, std::size_t& count) {
    count = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      out = out * 10 + (text[pos] - '0');
      ++pos;
      ++count;
    }
  };

  BigInt whole = 0;
  std::size_t n_whole = 0;
  digits(i, whole, n_whole);
  Rational value;
  if (i < text.size() && text[i] == '/') {
    ++i;
    BigInt den = 0;
    std::size_t n_den = 0;
    digits(i, den, n_den);
    if (n_whole == 0 || n_den == 0 || den == 0 || i != text.size()) fail();
    value = Rational(whole, den);
  } else if (i < text.size() && text[i] == '.') {
    ++i;
    BigInt frac = 0;
    std::size_t n_frac = 0;
    digits(i, frac, n_frac);
    if (n_whole + n_frac == 0 || i != text.size()) fail();
    BigInt scale = 1;
    for (std::size_t k = 0; k < n_frac; ++k) scale *= 10;
    value = Rational(whole * scale + frac, scale);
  } else {
    if (n_whole == 0 || i != text.size()) fail();
    value = Rational(whole);
  }
  return negative ? Rational(-value) : value;
}

}  // namespace adkit
