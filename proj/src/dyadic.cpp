#include "gradedrel/dyadic.hpp"

#include <sstream>

#include "gradedrel/errors.hpp"

namespace gradedrel {

namespace {

BigInt pow2_int(unsigned k) { return BigInt(1) << k; }

// Bring both values to the larger exponent; returns the aligned numerators.
std::pair<BigInt, BigInt> align(const DyadicValue& a, const DyadicValue& b, int& exponent) {
  exponent = std::max(a.exponent(), b.exponent());
  BigInt na = a.numerator() << static_cast<unsigned>(exponent - a.exponent());
  BigInt nb = b.numerator() << static_cast<unsigned>(exponent - b.exponent());
  return {na, nb};
}

}  // namespace

DyadicValue::DyadicValue(BigInt numerator, int exponent) : numerator_(std::move(numerator)), exponent_(exponent) {
  if (numerator_ < 0) throw Error(ErrorCode::RejectedInput, "dyadic values are nonnegative");
  normalize();
}

void DyadicValue::normalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto shift = boost::multiprecision::lsb(numerator_);
  numerator_ >>= shift;
  exponent_ -= static_cast<int>(shift);
}

int DyadicValue::floor_log2() const {
  if (is_zero()) throw Error(ErrorCode::UndefinedInput, "log2 of zero");
  return static_cast<int>(boost::multiprecision::msb(numerator_)) - exponent_;
}

int DyadicValue::ceil_log2() const {
  const int f = floor_log2();
  return is_power_of_two() ? f : f + 1;
}

DyadicValue DyadicValue::scaled_pow2(int k) const {
  DyadicValue out = *this;
  if (!out.is_zero()) out.exponent_ -= k;
  return out;
}

DyadicValue operator+(const DyadicValue& a, const DyadicValue& b) {
  int e = 0;
  auto [na, nb] = align(a, b, e);
  return DyadicValue(na + nb, e);
}

DyadicValue operator-(const DyadicValue& a, const DyadicValue& b) {
  int e = 0;
  auto [na, nb] = align(a, b, e);
  if (na < nb) throw Error(ErrorCode::UndefinedInput, "negative dyadic difference");
  return DyadicValue(na - nb, e);
}

DyadicValue operator*(const DyadicValue& a, const DyadicValue& b) {
  return DyadicValue(a.numerator_ * b.numerator_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const DyadicValue& a, const DyadicValue& b) {
  int e = 0;
  auto [na, nb] = align(a, b, e);
  if (na < nb) return std::strong_ordering::less;
  if (nb < na) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational DyadicValue::to_rational() const {
  if (exponent_ >= 0) return Rational(numerator_, pow2_int(static_cast<unsigned>(exponent_)));
  return Rational(numerator_ << static_cast<unsigned>(-exponent_));
}

std::string DyadicValue::to_string() const { return rational_to_string(to_rational()); }

bool at_most_pow2(const Rational& value, int n) {
  // value <= 2^(-n)  <=>  value * 2^n <= 1
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (n >= 0) return (num << static_cast<unsigned>(n)) <= den;
  return num <= (den << static_cast<unsigned>(-n));
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

}  // namespace gradedrel
