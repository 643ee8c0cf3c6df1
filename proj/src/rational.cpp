#include "limitcert/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace limitcert {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      return false;
    }
  }
  return true;
}

BigInt parse_integer(std::string_view digits) {
  return BigInt(std::string(digits), 10);
}

} // namespace

ExactRational::ExactRational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

ExactRational ExactRational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto fail = [&]() -> ExactRational {
    throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
  };
  if (body.empty()) {
    return fail();
  }

  ExactRational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      return fail();
    }
    BigInt d = parse_integer(den);
    if (d == 0) {
      return fail();
    }
    result = ExactRational(parse_integer(num), d);
  } else if (auto exp = body.find_first_of("eE"); exp != std::string_view::npos) {
    std::string_view power = body.substr(exp + 1);
    bool negative_power = false;
    if (!power.empty() && (power.front() == '-' || power.front() == '+')) {
      negative_power = power.front() == '-';
      power.remove_prefix(1);
    }
    if (!all_digits(power) || power.size() > 6) {
      return fail();
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, std::stoul(std::string(power)));
    const ExactRational mantissa = parse(body.substr(0, exp));
    result = negative_power ? mantissa / ExactRational(scale) : mantissa * ExactRational(scale);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      return fail();
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt num = whole.empty() ? BigInt(0) : parse_integer(whole);
    num *= scale;
    if (!frac.empty()) {
      num += parse_integer(frac);
    }
    result = ExactRational(num, scale);
  } else {
    if (!all_digits(body)) {
      return fail();
    }
    result = ExactRational(parse_integer(body));
  }
  return negative ? -result : result;
}

ExactRational ExactRational::from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot convert a non-finite double to a rational");
  }
  return ExactRational(mpq_class(value));
}

std::string ExactRational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

ExactRational ExactRational::pow(unsigned long exponent) const {
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  return ExactRational(num, den);
}

ExactRational ExactRational::abs() const { return ExactRational(mpq_class(::abs(value_))); }

ExactRational ExactRational::reciprocal() const { return ExactRational(1) / *this; }

ExactRational& ExactRational::operator+=(const ExactRational& rhs) {
  value_ += rhs.value_;
  return *this;
}

ExactRational& ExactRational::operator-=(const ExactRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

ExactRational& ExactRational::operator*=(const ExactRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
  if (rhs.sign() == 0) {
    throw std::domain_error("rational division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

ExactRational ExactRational::operator-() const { return ExactRational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const ExactRational& q) { return os << q.to_string(); }

std::string to_string(const BigInt& value) { return value.get_str(); }

} // namespace limitcert
