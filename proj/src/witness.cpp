#include "limitcert/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "limitcert/numerics.hpp"

namespace limitcert {

namespace {

unsigned long as_ulong(const ExactRational& q, const char* what) {
  if (!q.is_integer() || q.sign() < 0 || !q.numerator().fits_ulong_p()) {
    throw std::invalid_argument(std::string(what) + " must be a small non-negative integer, got " +
                                q.to_string());
  }
  return q.numerator().get_ui();
}

ExactRational two_m(Exponent m) { return ExactRational(2 * static_cast<long>(m)); }

std::string join(const std::vector<ExactRational>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += (i ? ", " : "") + xs[i].to_string();
  }
  return out + ")";
}

CheckResult fail(const std::string& where, const std::string& why) {
  return CheckResult{false, where + ": " + why};
}

CheckResult check_node(const GeneralizedProfile& gp, const Certificate& cert,
                       const std::string& where);

CheckResult check_base(const GeneralizedProfile& gp, const Base1D& node, const std::string& where) {
  const std::string here = where + " BASE_1D";
  if (gp.n() != 1) {
    return fail(here, "base node used for " + std::to_string(gp.n()) + " variables");
  }
  if (node.d != gp.d()[0] || node.m != gp.m()[0]) {
    return fail(here, "claims d=" + node.d.to_string() + ", m=" + std::to_string(node.m) +
                          " but the instance has d=" + gp.d()[0].to_string() +
                          ", m=" + std::to_string(gp.m()[0]));
  }
  if (!(node.d > two_m(node.m))) {
    return fail(here, "requires d > 2m, got d=" + node.d.to_string() +
                          " and 2m=" + std::to_string(2 * node.m));
  }
  return {};
}

CheckResult check_sandwich(const GeneralizedProfile& gp, const Sandwich& node,
                           const std::string& where) {
  const std::string here = where + " SANDWICH j=" + std::to_string(node.j);
  if (node.j >= gp.n()) {
    return fail(here, "index out of range");
  }
  const auto& d = gp.d();
  if (d[node.j] < two_m(gp.m()[node.j])) {
    return fail(here, "requires d_j >= 2 m_j, got d_j=" + d[node.j].to_string());
  }
  if (node.bound_exponents.size() != gp.n()) {
    return fail(here, "expected " + std::to_string(gp.n()) + " bound exponents");
  }
  bool any_positive = false;
  for (std::size_t i = 0; i < gp.n(); ++i) {
    const ExactRational expected = i == node.j ? d[i] - two_m(gp.m()[i]) : d[i];
    if (node.bound_exponents[i] != expected) {
      return fail(here, "bound exponent " + std::to_string(i) + " is " +
                            node.bound_exponents[i].to_string() + ", expected " +
                            expected.to_string());
    }
    any_positive = any_positive || expected.sign() > 0;
  }
  if (!any_positive) {
    return fail(here, "no bound exponent is positive, so the monomial does not vanish");
  }
  return {};
}

CheckResult check_inductive(const GeneralizedProfile& gp, const Inductive& node,
                            const std::string& where) {
  const std::string here = where + " INDUCTIVE j=" + std::to_string(node.j);
  if (gp.n() < 2) {
    return fail(here, "inductive step needs at least two variables");
  }
  if (node.j >= gp.n()) {
    return fail(here, "index out of range");
  }
  const ExactRational dj = gp.d()[node.j];
  if (dj.sign() <= 0 || !(dj < two_m(gp.m()[node.j]))) {
    return fail(here, "requires 0 < d_j < 2 m_j, got d_j=" + dj.to_string());
  }
  const KConstant k = line_max_constant(gp, node.j);
  if (node.k_const.base != k.base || node.k_const.exponent != k.exponent ||
      node.k_const.factor != k.factor) {
    return fail(here, "K constant {" + node.k_const.base.to_string() + ", " +
                          node.k_const.exponent.to_string() + ", " +
                          node.k_const.factor.to_string() + "} should be {" + k.base.to_string() +
                          ", " + k.exponent.to_string() + ", " + k.factor.to_string() + "}");
  }
  const auto expected = transformed_exponents(gp, node.j);
  if (node.child_d != expected) {
    return fail(here, "child exponents " + join(node.child_d) + " should be " + join(expected));
  }
  const GeneralizedProfile child_gp = gp.without(node.j, node.child_d);
  const ExactRational child_sigma = sigma(child_gp);
  const ExactRational rest = sigma(gp) - gp.ratio(node.j);
  if (child_sigma != rest / (ExactRational(1) - gp.ratio(node.j))) {
    return fail(here, "child criterion does not equal sigma_rest / (1 - d_j/(2 m_j))");
  }
  if (!(child_sigma > ExactRational(1))) {
    return fail(here, "child criterion " + child_sigma.to_string() + " is not > 1");
  }
  if (!node.child) {
    return fail(here, "missing child certificate");
  }
  return check_node(child_gp, *node.child, where + ".child");
}

CheckResult check_node(const GeneralizedProfile& gp, const Certificate& cert,
                       const std::string& where) {
  return std::visit(
      [&](const auto& node) -> CheckResult {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Base1D>) {
          return check_base(gp, node, where);
        } else if constexpr (std::is_same_v<T, Sandwich>) {
          return check_sandwich(gp, node, where);
        } else {
          return check_inductive(gp, node, where);
        }
      },
      cert.node);
}

} // namespace

RoyalPath royal_path(const GeneralizedProfile& gp, std::span<const ExactRational> lambda) {
  if (!gp.has_integer_exponents()) {
    throw std::invalid_argument("royal path needs integer exponents");
  }
  if (lambda.size() != gp.n()) {
    throw std::invalid_argument("lambda must have one entry per variable");
  }
  for (const auto& l : lambda) {
    if (l.sign() <= 0) {
      throw std::invalid_argument("lambda entries must be > 0, got " + l.to_string());
    }
  }

  RoyalPath path;
  path.weights = weights(gp);
  path.lambda.assign(lambda.begin(), lambda.end());

  BigInt degree = 0;
  ExactRational numerator(1);
  ExactRational denominator(0);
  for (std::size_t i = 0; i < gp.n(); ++i) {
    const unsigned long di = as_ulong(gp.d()[i], "exponent");
    degree += path.weights.p_vec[i] * di;
    numerator *= lambda[i].pow(di);
    denominator += lambda[i].pow(2UL * gp.m()[i]);
  }
  path.e = degree - 2 * path.weights.p;
  path.g_lambda = numerator / denominator;
  return path;
}

NonexistenceWitness find_nonexistence_witness(const GeneralizedProfile& gp) {
  if (gp.n() < 2) {
    throw std::invalid_argument("single-variable instances are settled by decide directly");
  }
  const ExactRational s = sigma(gp);
  if (s > ExactRational(1)) {
    throw std::invalid_argument("sigma = " + s.to_string() +
                                " > 1: the limit exists, so no witness exists");
  }

  const std::vector<ExactRational> ones(gp.n(), ExactRational(1));
  RoyalPath path_a = royal_path(gp, ones);
  if (path_a.e < 0) {
    return DivergentWitness{std::move(path_a)};
  }

  // e == 0. g restricted to coordinate j is l^d_j / (l^(2 m_j) + n - 1), which
  // is non-constant, so it equals g(1, ..., 1) at finitely many l only.
  const auto positive = std::find_if(gp.d().begin(), gp.d().end(),
                                     [](const ExactRational& d) { return d.sign() > 0; });
  const std::size_t j =
      positive == gp.d().end() ? 0 : static_cast<std::size_t>(positive - gp.d().begin());
  const ExactRational half(BigInt(1), BigInt(2));
  std::vector<ExactRational> lambda_b = ones;
  RoyalPath path_b;
  do {
    lambda_b[j] *= half;
    path_b = royal_path(gp, lambda_b);
  } while (path_b.g_lambda == path_a.g_lambda);

  PathDependentWitness w;
  w.value_a = path_a.g_lambda;
  w.value_b = path_b.g_lambda;
  w.path_a = std::move(path_a);
  w.path_b = std::move(path_b);
  return w;
}

double KConstant::value() const {
  return factor.to_double() * std::pow(base.to_double(), exponent.to_double());
}

KConstant line_max_constant(const GeneralizedProfile& gp, std::size_t j) {
  const ExactRational dj = gp.d().at(j);
  const ExactRational deg = two_m(gp.m()[j]);
  if (dj.sign() <= 0 || !(dj < deg)) {
    throw std::invalid_argument("line maximum needs 0 < d_j < 2 m_j, got d_j=" + dj.to_string());
  }
  return KConstant{dj / (deg - dj), dj / deg, (deg - dj) / deg};
}

std::vector<ExactRational> transformed_exponents(const GeneralizedProfile& gp, std::size_t j) {
  const ExactRational scale = ExactRational(1) - gp.ratio(j);
  if (scale.sign() <= 0) {
    throw std::invalid_argument("transformed exponents need d_j < 2 m_j");
  }
  std::vector<ExactRational> out;
  out.reserve(gp.n() - 1);
  for (std::size_t i = 0; i < gp.n(); ++i) {
    if (i != j) {
      out.push_back(gp.d()[i] / scale);
    }
  }
  return out;
}

Certificate build_certificate(const GeneralizedProfile& gp) {
  const ExactRational s = sigma(gp);
  if (!(s > ExactRational(1))) {
    throw std::invalid_argument("sigma = " + s.to_string() +
                                " <= 1: the limit does not exist, so no certificate exists");
  }
  if (gp.n() == 1) {
    return Certificate{Base1D{gp.d()[0], gp.m()[0]}};
  }

  for (std::size_t j = 0; j < gp.n(); ++j) {
    const ExactRational deg = two_m(gp.m()[j]);
    if (gp.d()[j] >= deg) {
      Sandwich node{j, gp.d()};
      node.bound_exponents[j] -= deg;
      return Certificate{std::move(node)};
    }
  }

  // Every d_i < 2 m_i here, and sigma > 1 forces some d_j > 0.
  std::size_t j = 0;
  while (gp.d()[j].sign() == 0) {
    ++j;
  }
  Inductive node;
  node.j = j;
  node.k_const = line_max_constant(gp, j);
  node.child_d = transformed_exponents(gp, j);
  node.child =
      std::make_shared<const Certificate>(build_certificate(gp.without(j, node.child_d)));
  return Certificate{std::move(node)};
}

CheckResult check_certificate(const GeneralizedProfile& gp, const Certificate& cert) {
  return check_node(gp, cert, "root");
}

double certificate_bound(const GeneralizedProfile& gp, const Certificate& cert,
                         std::span<const double> x) {
  if (x.size() != gp.n()) {
    throw std::invalid_argument("point dimension does not match the instance");
  }
  return std::visit(
      [&](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Base1D>) {
          return abs_pow(x[0], (node.d - two_m(node.m)).to_double());
        } else if constexpr (std::is_same_v<T, Sandwich>) {
          double bound = 1.0;
          for (std::size_t i = 0; i < x.size(); ++i) {
            bound *= abs_pow(x[i], node.bound_exponents[i].to_double());
          }
          return bound;
        } else {
          std::vector<double> rest;
          rest.reserve(x.size() - 1);
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i != node.j) {
              rest.push_back(x[i]);
            }
          }
          if (std::all_of(rest.begin(), rest.end(), [](double v) { return v == 0.0; })) {
            throw std::domain_error("inductive bound undefined: every coordinate other than j is 0");
          }
          const GeneralizedProfile child_gp = gp.without(node.j, node.child_d);
          const double g = eval_f(child_gp, rest);
          const double power = 1.0 - gp.ratio(node.j).to_double();
          return node.k_const.value() * std::pow(g, power);
        }
      },
      cert.node);
}

std::size_t certificate_depth(const Certificate& cert) {
  if (const auto* inductive = std::get_if<Inductive>(&cert.node)) {
    return 1 + (inductive->child ? certificate_depth(*inductive->child) : 0);
  }
  return 1;
}

} // namespace limitcert
