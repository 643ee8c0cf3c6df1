#pragma once

// Problem instances f(x) = x1^a1 ... xN^aN / (c1 x1^(2 m1) + ... + cN xN^(2 mN))
// and the exact decision of whether f has a limit at the origin.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "limitcert/rational.hpp"

namespace limitcert {

using Exponent = std::uint32_t;

/// Public problem instance. Construct through Profile::make, which validates.
class Profile {
public:
  /// Throws std::invalid_argument unless the lists share a length n >= 1,
  /// every m >= 1 and every c > 0.
  static Profile make(std::vector<Exponent> a, std::vector<Exponent> m,
                      std::vector<ExactRational> c);

  /// Same as make with all coefficients equal to 1.
  static Profile unit(std::vector<Exponent> a, std::vector<Exponent> m);

  std::size_t n() const { return a_.size(); }
  const std::vector<Exponent>& a() const { return a_; }
  const std::vector<Exponent>& m() const { return m_; }
  const std::vector<ExactRational>& c() const { return c_; }

  bool has_unit_coefficients() const;

  /// Copy with the coefficient list replaced (validated as in make).
  Profile with_coefficients(std::vector<ExactRational> c) const;

  friend bool operator==(const Profile&, const Profile&) = default;

private:
  Profile() = default;

  std::vector<Exponent> a_;
  std::vector<Exponent> m_;
  std::vector<ExactRational> c_;
};

/// Instance with non-negative rational exponents d and implicit unit
/// coefficients. Arises from the induction in the existence certificate,
/// where transformed exponents are generally not integers.
class GeneralizedProfile {
public:
  /// Throws std::invalid_argument unless d and m share a length n >= 1,
  /// every d >= 0 and every m >= 1.
  static GeneralizedProfile make(std::vector<ExactRational> d, std::vector<Exponent> m);

  std::size_t n() const { return d_.size(); }
  const std::vector<ExactRational>& d() const { return d_; }
  const std::vector<Exponent>& m() const { return m_; }

  bool has_integer_exponents() const;

  /// Ratio d_i / (2 m_i).
  ExactRational ratio(std::size_t i) const;

  /// Sub-profile with variable i removed and the remaining exponents replaced
  /// by d_rest (length n - 1).
  GeneralizedProfile without(std::size_t i, std::vector<ExactRational> d_rest) const;

  friend bool operator==(const GeneralizedProfile&, const GeneralizedProfile&) = default;

private:
  GeneralizedProfile() = default;

  std::vector<ExactRational> d_;
  std::vector<Exponent> m_;
};

enum class Verdict { LimitZero, LimitOne, NoLimit };

std::string_view to_string(Verdict v);

struct Decision {
  ExactRational sigma;
  Verdict verdict = Verdict::NoLimit;
  /// 0 or 1; present iff verdict != NoLimit.
  std::optional<ExactRational> limit_value;
};

/// p = m_1 ... m_N and p_i = p / m_i. Exponents of the path t -> (t^p_1, ..., t^p_N)
/// that balances every denominator term at degree 2p.
struct Weights {
  BigInt p;
  std::vector<BigInt> p_vec;
};

/// sum_i d_i / (2 m_i), exactly.
ExactRational sigma(const GeneralizedProfile& gp);

/// Lifts integer exponents to rationals and drops the coefficients, which do
/// not affect the decision.
GeneralizedProfile generalize(const Profile& p);

/// For n > 1 the limit exists (and is 0) iff sigma > 1. For n = 1 the limit is
/// 1 when sigma == 1, 0 when sigma > 1, and does not exist when sigma < 1.
Decision decide(const Profile& p);

Weights weights(const GeneralizedProfile& gp);

/// beta_i = c_i^(1/(2 m_i)): substituting X_i = beta_i x_i turns every
/// coefficient into 1. Floating point only; never used by decide.
std::vector<double> rescale_factors(const Profile& p);

} // namespace limitcert
