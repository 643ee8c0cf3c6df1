#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace limitcert {

using BigInt = mpz_class;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator. Backed by GMP's mpq.
class ExactRational {
public:
  ExactRational() = default;

  template <std::integral I>
  ExactRational(I value) : value_(BigInt(static_cast<long>(value))) {}

  explicit ExactRational(const BigInt& integer) : value_(integer) {}

  /// Throws std::invalid_argument when den == 0.
  ExactRational(const BigInt& num, const BigInt& den);

  /// Accepts "p", "p/q", "-p/q" and decimals such as "0.25", "3." or "1e-5",
  /// converted without rounding. Throws std::invalid_argument otherwise.
  static ExactRational parse(std::string_view text);

  /// Exact value of a finite double (every double is a dyadic rational).
  static ExactRational from_double(double value);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }

  /// Always "num/den", e.g. "83/84", "2/1", "-1/3".
  std::string to_string() const;

  ExactRational pow(unsigned long exponent) const;
  ExactRational abs() const;
  ExactRational reciprocal() const;

  ExactRational& operator+=(const ExactRational& rhs);
  ExactRational& operator-=(const ExactRational& rhs);
  ExactRational& operator*=(const ExactRational& rhs);
  /// Throws std::domain_error on division by zero.
  ExactRational& operator/=(const ExactRational& rhs);

  friend ExactRational operator+(ExactRational lhs, const ExactRational& rhs) { return lhs += rhs; }
  friend ExactRational operator-(ExactRational lhs, const ExactRational& rhs) { return lhs -= rhs; }
  friend ExactRational operator*(ExactRational lhs, const ExactRational& rhs) { return lhs *= rhs; }
  friend ExactRational operator/(ExactRational lhs, const ExactRational& rhs) { return lhs /= rhs; }
  ExactRational operator-() const;

  friend bool operator==(const ExactRational& lhs, const ExactRational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const ExactRational& lhs, const ExactRational& rhs) {
    return cmp(lhs.value_, rhs.value_) <=> 0;
  }

  const mpq_class& raw() const { return value_; }

private:
  explicit ExactRational(mpq_class value) : value_(std::move(value)) {}

  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactRational& q);

/// Decimal rendering of a big integer.
std::string to_string(const BigInt& value);

} // namespace limitcert
