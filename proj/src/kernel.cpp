#include "limitcert/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace limitcert {

Profile Profile::make(std::vector<Exponent> a, std::vector<Exponent> m,
                      std::vector<ExactRational> c) {
  if (a.empty()) {
    throw std::invalid_argument("profile needs at least one variable");
  }
  if (m.size() != a.size() || c.size() != a.size()) {
    throw std::invalid_argument("profile lists a, m, c must have equal length");
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 1) {
      throw std::invalid_argument("half-degree m" + std::to_string(i + 1) + " must be >= 1");
    }
    if (c[i].sign() <= 0) {
      throw std::invalid_argument("coefficient c" + std::to_string(i + 1) + " must be > 0");
    }
  }
  Profile p;
  p.a_ = std::move(a);
  p.m_ = std::move(m);
  p.c_ = std::move(c);
  return p;
}

Profile Profile::unit(std::vector<Exponent> a, std::vector<Exponent> m) {
  std::vector<ExactRational> c(a.size(), ExactRational(1));
  return make(std::move(a), std::move(m), std::move(c));
}

bool Profile::has_unit_coefficients() const {
  for (const auto& ci : c_) {
    if (ci != 1) {
      return false;
    }
  }
  return true;
}

Profile Profile::with_coefficients(std::vector<ExactRational> c) const {
  return make(a_, m_, std::move(c));
}

GeneralizedProfile GeneralizedProfile::make(std::vector<ExactRational> d, std::vector<Exponent> m) {
  if (d.empty()) {
    throw std::invalid_argument("profile needs at least one variable");
  }
  if (m.size() != d.size()) {
    throw std::invalid_argument("exponent lists d and m must have equal length");
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].sign() < 0) {
      throw std::invalid_argument("exponent d" + std::to_string(i + 1) + " must be >= 0");
    }
    if (m[i] < 1) {
      throw std::invalid_argument("half-degree m" + std::to_string(i + 1) + " must be >= 1");
    }
  }
  GeneralizedProfile gp;
  gp.d_ = std::move(d);
  gp.m_ = std::move(m);
  return gp;
}

bool GeneralizedProfile::has_integer_exponents() const {
  for (const auto& di : d_) {
    if (!di.is_integer()) {
      return false;
    }
  }
  return true;
}

ExactRational GeneralizedProfile::ratio(std::size_t i) const {
  return d_.at(i) / ExactRational(2 * static_cast<long>(m_.at(i)));
}

GeneralizedProfile GeneralizedProfile::without(std::size_t i,
                                               std::vector<ExactRational> d_rest) const {
  if (i >= n()) {
    throw std::out_of_range("variable index out of range");
  }
  std::vector<Exponent> m_rest;
  m_rest.reserve(n() - 1);
  for (std::size_t k = 0; k < n(); ++k) {
    if (k != i) {
      m_rest.push_back(m_[k]);
    }
  }
  return make(std::move(d_rest), std::move(m_rest));
}

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::LimitZero:
    return "LIMIT_ZERO";
  case Verdict::LimitOne:
    return "LIMIT_ONE";
  case Verdict::NoLimit:
    return "NO_LIMIT";
  }
  return "?";
}

ExactRational sigma(const GeneralizedProfile& gp) {
  ExactRational total;
  for (std::size_t i = 0; i < gp.n(); ++i) {
    total += gp.ratio(i);
  }
  return total;
}

GeneralizedProfile generalize(const Profile& p) {
  std::vector<ExactRational> d;
  d.reserve(p.n());
  for (Exponent ai : p.a()) {
    d.emplace_back(ai);
  }
  return GeneralizedProfile::make(std::move(d), p.m());
}

Decision decide(const Profile& p) {
  Decision out;
  out.sigma = sigma(generalize(p));
  const auto cmp = out.sigma <=> ExactRational(1);
  if (cmp > 0) {
    out.verdict = Verdict::LimitZero;
    out.limit_value = ExactRational(0);
  } else if (cmp == 0 && p.n() == 1) {
    out.verdict = Verdict::LimitOne;
    out.limit_value = ExactRational(1);
  } else {
    out.verdict = Verdict::NoLimit;
  }
  return out;
}

Weights weights(const GeneralizedProfile& gp) {
  Weights w;
  w.p = 1;
  for (Exponent mi : gp.m()) {
    w.p *= static_cast<unsigned long>(mi);
  }
  w.p_vec.reserve(gp.n());
  for (Exponent mi : gp.m()) {
    w.p_vec.push_back(w.p / static_cast<unsigned long>(mi));
  }
  return w;
}

std::vector<double> rescale_factors(const Profile& p) {
  std::vector<double> beta;
  beta.reserve(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    const long double c = p.c()[i].to_double();
    const long double deg = 2.0L * p.m()[i];
    long double b = std::pow(c, 1.0L / deg);
    // One Newton step on b^deg = c in extended precision.
    const long double bk = std::pow(b, deg - 1.0L);
    b -= (bk * b - c) / (deg * bk);
    beta.push_back(static_cast<double>(b));
  }
  return beta;
}

} // namespace limitcert
