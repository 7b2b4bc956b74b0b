#include "teleskope/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "teleskope/errors.hpp"

namespace teleskope {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

BigInt pow10(std::size_t e) {
  BigInt r(1);
  for (std::size_t i = 0; i < e; ++i) r *= 10;
  return r;
}

// cpp_int's string constructor treats a leading 0 as an octal prefix.
BigInt decimal_to_bigint(std::string_view digits) {
  std::size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return BigInt(0);
  return BigInt{std::string(digits.substr(first))};
}

[[noreturn]] void fail(std::string_view text) {
  throw ParseError("not a valid exact number: '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw ContractError("rational with zero denominator");
  value_ = BigRational(num, den);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw ContractError("division by zero");
  return Rational(BigRational(a.value_ / b.value_));
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) fail(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail(text);

  // Fraction literal "p/q".
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view p = s.substr(0, slash);
    std::string_view q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) fail(text);
    BigInt num = decimal_to_bigint(p);
    BigInt den = decimal_to_bigint(q);
    if (den.is_zero()) fail(text);
    if (negative) num = -num;
    return Rational(num, den);
  }

  // Decimal with optional exponent: digits[.digits][eE[+-]digits]
  std::string_view mantissa = s;
  long long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    std::string_view es = s.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) fail(text);
    exponent = std::strtoll(std::string(es).c_str(), nullptr, 10);
    if (eneg) exponent = -exponent;
  }

  std::string_view ipart = mantissa;
  std::string_view fpart;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    ipart = mantissa.substr(0, dot);
    fpart = mantissa.substr(dot + 1);
  }
  if (ipart.empty() && fpart.empty()) fail(text);
  if ((!ipart.empty() && !all_digits(ipart)) || (!fpart.empty() && !all_digits(fpart))) fail(text);

  BigInt num = decimal_to_bigint(std::string(ipart) + std::string(fpart));
  BigInt den(1);

  long long shift = exponent - static_cast<long long>(fpart.size());
  if (shift > 0) {
    num *= pow10(static_cast<std::size_t>(shift));
  } else if (shift < 0) {
    den = pow10(static_cast<std::size_t>(-shift));
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const {
  std::string n = num().str();
  if (is_integer()) return n;
  return n + "/" + den().str();
}

}  // namespace teleskope
