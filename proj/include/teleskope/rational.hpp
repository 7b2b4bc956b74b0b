#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace teleskope {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Arbitrary-precision rational scalar. All arithmetic and comparisons are
// exact; construction from decimal text never rounds.
class Rational {
public:
  Rational() : value_(0) {}
  Rational(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(BigRational v) : value_(std::move(v)) {}

  // Accepts plain integers, decimal fractions, scientific notation and
  // "p/q" fraction literals. Rejects NaN/inf spellings and anything lossy.
  static Rational parse(std::string_view text);

  BigInt num() const { return boost::multiprecision::numerator(value_); }
  BigInt den() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const { return den() == 1; }
  int sign() const { return value_.sign(); }

  Rational abs() const { return value_.sign() < 0 ? Rational(BigRational(-value_)) : *this; }

  // Canonical form: "p" when integral, "p/q" otherwise (q > 0, coprime).
  std::string str() const;
  double to_double() const { return value_.convert_to<double>(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(BigRational(a.value_ + b.value_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(BigRational(a.value_ - b.value_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(BigRational(a.value_ * b.value_)); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(BigRational(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

private:
  BigRational value_;
};

}  // namespace teleskope
