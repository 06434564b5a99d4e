#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "gradedrel/grade.hpp"

namespace gradedrel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact nonnegative dyadic rational numerator * 2^(-exponent), kept with an odd (or zero) numerator.
class DyadicValue {
 public:
  DyadicValue() = default;
  DyadicValue(BigInt numerator, int exponent);

  static DyadicValue zero() { return {}; }
  static DyadicValue pow2(int k) { return DyadicValue(1, -k); }
  // 2^(-g), and 0 for TOP.
  static DyadicValue from_grade(Grade g) { return g.is_top() ? zero() : pow2(-g.level()); }

  const BigInt& numerator() const { return numerator_; }
  int exponent() const { return exponent_; }
  bool is_zero() const { return numerator_ == 0; }
  bool is_power_of_two() const { return numerator_ == 1; }

  // Largest k with 2^k <= value; value must be positive.
  int floor_log2() const;
  // Smallest k with value <= 2^k; value must be positive.
  int ceil_log2() const;

  DyadicValue scaled_pow2(int k) const;  // value * 2^k

  friend DyadicValue operator+(const DyadicValue& a, const DyadicValue& b);
  friend DyadicValue operator*(const DyadicValue& a, const DyadicValue& b);
  // Requires a >= b.
  friend DyadicValue operator-(const DyadicValue& a, const DyadicValue& b);
  friend bool operator==(const DyadicValue&, const DyadicValue&) = default;
  friend std::strong_ordering operator<=>(const DyadicValue& a, const DyadicValue& b);

  Rational to_rational() const;

  // "0", "3", "17/32".
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const DyadicValue& v) { return os << v.to_string(); }

 private:
  void normalize();

  BigInt numerator_ = 0;
  int exponent_ = 0;
};

/// Exact comparison of a rational against 2^(-n).
bool at_most_pow2(const Rational& value, int n);

std::string rational_to_string(const Rational& r);

}  // namespace gradedrel
