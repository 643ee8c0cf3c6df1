#pragma once

// Constructive evidence for both directions of the limit criterion.
//
// sigma <= 1: along t -> (l_1 t^p_1, ..., l_N t^p_N) every denominator term
// has degree 2p, so f collapses to g(l) * t^e with e = 2p (sigma - 1). A
// negative e is a divergent path; e == 0 gives constant values that depend
// on l.
//
// sigma > 1: a certificate tree records the bound that forces |f| -> 0. Each
// node either bounds |f| by a monomial (sandwich), or maximizes f along lines
// parallel to axis j and reduces to an (n-1)-variable instance whose criterion
// is again > 1 (inductive).

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "limitcert/kernel.hpp"

namespace limitcert {

struct RoyalPath {
  Weights weights;
  std::vector<ExactRational> lambda;
  /// sum_i a_i p_i - 2 p
  BigInt e;
  /// prod_i lambda_i^a_i / sum_i lambda_i^(2 m_i)
  ExactRational g_lambda;
};

struct DivergentWitness {
  RoyalPath path;
};

struct PathDependentWitness {
  RoyalPath path_a;
  RoyalPath path_b;
  ExactRational value_a;
  ExactRational value_b;
};

using NonexistenceWitness = std::variant<DivergentWitness, PathDependentWitness>;

/// Throws std::invalid_argument for non-integer exponents, a lambda of the
/// wrong length, or any lambda_i <= 0.
RoyalPath royal_path(const GeneralizedProfile& gp, std::span<const ExactRational> lambda);

/// Requires n > 1, integer exponents and sigma <= 1 (std::invalid_argument
/// otherwise). sigma < 1 yields a divergent path at lambda = (1, ..., 1);
/// sigma == 1 yields two constant-valued paths with different values, the
/// second obtained by halving one coordinate of lambda until g changes.
NonexistenceWitness find_nonexistence_witness(const GeneralizedProfile& gp);

struct Certificate;

/// d_1 > 2 m_1: |f| = |x_1|^(d_1 - 2 m_1).
struct Base1D {
  ExactRational d;
  Exponent m = 1;
};

/// d_j >= 2 m_j: |f| <= prod_i |x_i|^b_i with b = d except b_j = d_j - 2 m_j.
struct Sandwich {
  std::size_t j = 0;
  std::vector<ExactRational> bound_exponents;
};

/// K = factor * base^exponent with base = d_j / (2 m_j - d_j),
/// exponent = d_j / (2 m_j), factor = (2 m_j - d_j) / (2 m_j).
struct KConstant {
  ExactRational base;
  ExactRational exponent;
  ExactRational factor;

  double value() const;
};

/// 0 < d_j < 2 m_j: for fixed other coordinates, |f| <= K * g^(1 - d_j/(2 m_j))
/// where g is the (n-1)-variable instance with exponents child_d.
struct Inductive {
  std::size_t j = 0;
  KConstant k_const;
  std::vector<ExactRational> child_d;
  std::shared_ptr<const Certificate> child;
};

struct Certificate {
  std::variant<Base1D, Sandwich, Inductive> node;
};

/// K for line maximization along axis j; requires 0 < d_j < 2 m_j.
KConstant line_max_constant(const GeneralizedProfile& gp, std::size_t j);

/// child_d_i = d_i / (1 - d_j / (2 m_j)) for i != j, in order.
std::vector<ExactRational> transformed_exponents(const GeneralizedProfile& gp, std::size_t j);

/// Deterministic (smallest qualifying index) construction; throws
/// std::invalid_argument when sigma <= 1.
Certificate build_certificate(const GeneralizedProfile& gp);

struct CheckResult {
  bool ok = true;
  /// Description of the first failing node, empty when ok.
  std::string failure;

  explicit operator bool() const { return ok; }
};

/// Re-derives every node with exact arithmetic; no sampling.
CheckResult check_certificate(const GeneralizedProfile& gp, const Certificate& cert);

/// Upper bound on |f(x)| given by the root node. Throws std::domain_error at
/// an inductive root when every coordinate other than j is zero, and
/// std::invalid_argument if x has the wrong length.
double certificate_bound(const GeneralizedProfile& gp, const Certificate& cert,
                         std::span<const double> x);

/// Number of nodes on the root-to-leaf chain.
std::size_t certificate_depth(const Certificate& cert);

} // namespace limitcert
