#include "limitcert/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace limitcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Precomputed view of f = prod |x_i|^num_exp_i (signed for odd integer
/// exponents) / sum coef_i x_i^den_exp_i.
class Evaluator {
public:
  explicit Evaluator(const Profile& p) : limit_exists_(decide(p).verdict != Verdict::NoLimit) {
    for (std::size_t i = 0; i < p.n(); ++i) {
      num_exp_.push_back(static_cast<double>(p.a()[i]));
      odd_.push_back(p.a()[i] % 2 == 1);
      coef_.push_back(p.c()[i].to_double());
      den_exp_.push_back(2.0 * p.m()[i]);
    }
    finish();
  }

  explicit Evaluator(const GeneralizedProfile& gp) : limit_exists_(sigma(gp) > ExactRational(1)) {
    for (std::size_t i = 0; i < gp.n(); ++i) {
      num_exp_.push_back(gp.d()[i].to_double());
      odd_.push_back(false);
      coef_.push_back(1.0);
      den_exp_.push_back(2.0 * gp.m()[i]);
    }
    finish();
  }

  std::size_t n() const { return num_exp_.size(); }

  double operator()(std::span<const double> x) const {
    if (x.size() != n()) {
      throw std::invalid_argument("point has " + std::to_string(x.size()) +
                                  " coordinates, expected " + std::to_string(n()));
    }
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
      if (limit_exists_) {
        return 0.0;
      }
      throw std::domain_error("f is undefined at the origin (no limit there)");
    }

    bool negative = false;
    bool zero_numerator = false;
    bool direct = true;
    double num = 1.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n(); ++i) {
      const double ax = std::fabs(x[i]);
      if (num_exp_[i] != 0.0) {
        if (x[i] == 0.0) {
          zero_numerator = true;
        } else {
          const double v = std::pow(ax, num_exp_[i]);
          direct = direct && std::isnormal(v);
          num *= v;
          negative = negative != (odd_[i] && x[i] < 0.0);
        }
      }
      if (x[i] != 0.0) {
        const double v = coef_[i] * std::pow(ax, den_exp_[i]);
        direct = direct && std::isnormal(v);
        den += v;
      }
    }
    if (zero_numerator) {
      return 0.0;
    }
    if (direct && std::isnormal(num) && std::isnormal(den)) {
      const double value = num / den;
      return negative ? -value : value;
    }

    std::vector<double> logs(n(), -kInf);
    for (std::size_t i = 0; i < n(); ++i) {
      if (x[i] != 0.0) {
        logs[i] = std::log(std::fabs(x[i]));
      }
    }
    const double value = from_logs(logs);
    return negative ? -value : value;
  }

  /// |f| from log|x_i| (-inf for a zero coordinate); at least one finite entry.
  double from_logs(std::span<const double> logs) const {
    double log_num = 0.0;
    for (std::size_t i = 0; i < n(); ++i) {
      if (num_exp_[i] != 0.0) {
        if (logs[i] == -kInf) {
          return 0.0;
        }
        log_num += num_exp_[i] * logs[i];
      }
    }
    double top = -kInf;
    for (std::size_t i = 0; i < n(); ++i) {
      if (logs[i] != -kInf) {
        top = std::max(top, log_coef_[i] + den_exp_[i] * logs[i]);
      }
    }
    if (top == -kInf) {
      throw std::domain_error("f is undefined at the origin");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n(); ++i) {
      if (logs[i] != -kInf) {
        acc += std::exp(log_coef_[i] + den_exp_[i] * logs[i] - top);
      }
    }
    return std::exp(log_num - (top + std::log(acc)));
  }

private:
  void finish() {
    for (double c : coef_) {
      log_coef_.push_back(std::log(c));
    }
  }

  bool limit_exists_;
  std::vector<double> num_exp_;
  std::vector<bool> odd_;
  std::vector<double> coef_;
  std::vector<double> log_coef_;
  std::vector<double> den_exp_;
};

/// SplitMix64 step; also used as a mixing function for counter-based streams.
std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SampleStream {
public:
  SampleStream(std::uint64_t seed, std::uint64_t shell, std::uint64_t sample) : state_(seed) {
    state_ = splitmix(state_) ^ shell;
    state_ = splitmix(state_) ^ sample;
    state_ = splitmix(state_);
  }

  std::uint64_t bits() { return splitmix(state_); }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  std::size_t index(std::size_t bound) {
    return static_cast<std::size_t>(bits() % bound);
  }

private:
  std::uint64_t state_;
};

void require_line_preconditions(const GeneralizedProfile& gp, std::size_t j,
                                std::span<const double> x_rest) {
  if (j >= gp.n()) {
    throw std::invalid_argument("axis index out of range");
  }
  if (x_rest.size() + 1 != gp.n()) {
    throw std::invalid_argument("x_rest must hold the n - 1 coordinates other than j");
  }
  const ExactRational dj = gp.d()[j];
  if (dj.sign() <= 0 || !(dj < ExactRational(2 * static_cast<long>(gp.m()[j])))) {
    throw std::invalid_argument("line maximum needs 0 < d_j < 2 m_j, got d_j=" + dj.to_string());
  }
  if (std::all_of(x_rest.begin(), x_rest.end(), [](double v) { return v == 0.0; })) {
    throw std::invalid_argument("line maximum needs sum_{i != j} x_i^(2 m_i) > 0");
  }
}

std::vector<Exponent> m_without(const GeneralizedProfile& gp, std::size_t j) {
  std::vector<Exponent> out;
  for (std::size_t i = 0; i < gp.n(); ++i) {
    if (i != j) {
      out.push_back(gp.m()[i]);
    }
  }
  return out;
}

} // namespace

double abs_pow(double x, double d) {
  if (d == 0.0) {
    return 1.0;
  }
  if (x == 0.0) {
    return 0.0;
  }
  return std::pow(std::fabs(x), d);
}

double eval_f(const Profile& p, std::span<const double> x) { return Evaluator(p)(x); }

double eval_f(const GeneralizedProfile& gp, std::span<const double> x) { return Evaluator(gp)(x); }

double line_restriction(const GeneralizedProfile& gp, std::size_t j,
                        std::span<const double> x_rest, double t) {
  if (j >= gp.n() || x_rest.size() + 1 != gp.n()) {
    throw std::invalid_argument("x_rest must hold the n - 1 coordinates other than j");
  }
  std::vector<double> x;
  x.reserve(gp.n());
  for (std::size_t i = 0, k = 0; i < gp.n(); ++i) {
    x.push_back(i == j ? t : std::fabs(x_rest[k++]));
  }
  return eval_f(gp, x);
}

double line_max_point(const GeneralizedProfile& gp, std::size_t j, std::span<const double> x_rest) {
  require_line_preconditions(gp, j, x_rest);
  const double deg = 2.0 * gp.m()[j];
  const double base = line_max_constant(gp, j).base.to_double();
  const auto m_rest = m_without(gp, j);

  double s = 0.0;
  bool direct = true;
  for (std::size_t k = 0; k < x_rest.size(); ++k) {
    if (x_rest[k] != 0.0) {
      const double v = std::pow(std::fabs(x_rest[k]), 2.0 * m_rest[k]);
      direct = direct && std::isnormal(v);
      s += v;
    }
  }
  if (direct && std::isnormal(s)) {
    return std::pow(base, 1.0 / deg) * std::pow(s, 1.0 / deg);
  }
  double top = -kInf;
  for (std::size_t k = 0; k < x_rest.size(); ++k) {
    if (x_rest[k] != 0.0) {
      top = std::max(top, 2.0 * m_rest[k] * std::log(std::fabs(x_rest[k])));
    }
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < x_rest.size(); ++k) {
    if (x_rest[k] != 0.0) {
      acc += std::exp(2.0 * m_rest[k] * std::log(std::fabs(x_rest[k])) - top);
    }
  }
  return std::exp((std::log(base) + top + std::log(acc)) / deg);
}

double line_max_value(const GeneralizedProfile& gp, std::size_t j, std::span<const double> x_rest) {
  require_line_preconditions(gp, j, x_rest);
  const KConstant k = line_max_constant(gp, j);
  const GeneralizedProfile child = gp.without(j, transformed_exponents(gp, j));
  const double g = eval_f(child, x_rest);
  return k.value() * std::pow(g, 1.0 - gp.ratio(j).to_double());
}

std::vector<double> path_point(const RoyalPath& path, double t) {
  std::vector<double> x;
  x.reserve(path.lambda.size());
  for (std::size_t i = 0; i < path.lambda.size(); ++i) {
    x.push_back(path.lambda[i].to_double() * std::pow(t, path.weights.p_vec[i].get_d()));
  }
  return x;
}

double eval_along_path(const Profile& p, const RoyalPath& path, double t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("path parameter t must be > 0");
  }
  if (!p.has_unit_coefficients()) {
    throw std::invalid_argument("royal-path evaluation assumes unit coefficients; rescale first");
  }
  if (path.lambda.size() != p.n()) {
    throw std::invalid_argument("path dimension does not match the profile");
  }
  const Evaluator f(p);
  const auto x = path_point(path, t);
  if (std::all_of(x.begin(), x.end(), [](double v) { return std::isnormal(v); })) {
    return f(x);
  }
  std::vector<double> logs;
  logs.reserve(p.n());
  const double log_t = std::log(t);
  for (std::size_t i = 0; i < p.n(); ++i) {
    logs.push_back(std::log(path.lambda[i].to_double()) + path.weights.p_vec[i].get_d() * log_t);
  }
  return f.from_logs(logs);
}

std::string_view to_string(Trend t) {
  switch (t) {
  case Trend::TendsToZero:
    return "TENDS_TO_ZERO";
  case Trend::BoundedAway:
    return "BOUNDED_AWAY";
  case Trend::Diverges:
    return "DIVERGES";
  case Trend::Inconclusive:
    return "INCONCLUSIVE";
  }
  return "?";
}

double shell_sup(const Profile& p, double r, std::size_t n_samples, std::uint64_t seed,
                 std::uint64_t shell_index, bool inject_royal_path) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("shell radius must be > 0");
  }
  if (n_samples < 1) {
    throw std::invalid_argument("need at least one sample per shell");
  }
  const Evaluator f(p);
  const std::size_t n = p.n();
  std::vector<double> x(n);
  double best = 0.0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    SampleStream rng(seed, shell_index, k);
    const std::size_t face = rng.index(n);
    const bool flip = (rng.bits() & 1U) != 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = i == face ? (flip ? -r : r) : r * (2.0 * rng.unit() - 1.0);
    }
    best = std::max(best, std::fabs(f(x)));
  }
  if (inject_royal_path) {
    const Weights w = weights(generalize(p));
    const double p_min = std::min_element(w.p_vec.begin(), w.p_vec.end())->get_d();
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::pow(r, w.p_vec[i].get_d() / p_min);
    }
    best = std::max(best, std::fabs(f(x)));
  }
  return best;
}

Trend classify_trend(std::span<const double> estimates, const ProbeOptions& options) {
  if (estimates.size() < 2) {
    return Trend::Inconclusive;
  }
  const double first = estimates.front();
  const double last = estimates.back();
  const bool finite = std::all_of(estimates.begin(), estimates.end(),
                                  [](double v) { return std::isfinite(v); });
  bool non_increasing = true;
  for (std::size_t k = 1; k < estimates.size(); ++k) {
    non_increasing = non_increasing && estimates[k] <= estimates[k - 1];
  }
  if (finite && non_increasing && last < options.decay_factor * first) {
    return Trend::TendsToZero;
  }
  if (last >= options.growth_factor * first && last > 0.0) {
    return Trend::Diverges;
  }
  const auto [lo, hi] = std::minmax_element(estimates.begin(), estimates.end());
  if (finite && *lo > 0.0 && *hi <= options.band_factor * *lo) {
    return Trend::BoundedAway;
  }
  return Trend::Inconclusive;
}

ProbeReport limit_probe(const Profile& p, std::vector<double> radii, std::size_t n_samples,
                        std::uint64_t seed, const ProbeOptions& options) {
  if (radii.size() < 3) {
    throw std::invalid_argument("probe needs at least three radii");
  }
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] < radii[k - 1]))) {
      throw std::invalid_argument("probe radii must be positive and strictly decreasing");
    }
  }
  if (n_samples < 1) {
    throw std::invalid_argument("need at least one sample per shell");
  }
  ProbeReport report;
  report.samples_per_shell = n_samples;
  report.seed = seed;
  report.sup_estimates.reserve(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    report.sup_estimates.push_back(
        shell_sup(p, radii[k], n_samples, seed, k, options.inject_royal_path));
  }
  report.radii = std::move(radii);
  report.trend_verdict = classify_trend(report.sup_estimates, options);
  return report;
}

std::vector<double> geometric_grid(double first, double last, std::size_t count) {
  if (count == 0) {
    return {};
  }
  if (!(first > 0.0) || !(last > 0.0)) {
    throw std::invalid_argument("geometric grid endpoints must be > 0");
  }
  if (count == 1) {
    return {first};
  }
  std::vector<double> grid;
  grid.reserve(count);
  const double lo = std::log10(first);
  const double step = (std::log10(last) - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    grid.push_back(std::pow(10.0, lo + step * static_cast<double>(k)));
  }
  grid.front() = first;
  grid.back() = last;
  return grid;
}

double partial_derivative(const Profile& p, std::size_t j, std::span<const double> x) {
  if (x.size() != p.n() || j >= p.n()) {
    throw std::invalid_argument("point dimension or axis index does not match the profile");
  }
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
    throw std::domain_error("partial derivative is not evaluated pointwise at the origin");
  }
  double den = 0.0;
  double rest = 1.0;
  for (std::size_t i = 0; i < p.n(); ++i) {
    den += p.c()[i].to_double() * std::pow(x[i], 2.0 * p.m()[i]);
    if (i != j && p.a()[i] != 0) {
      rest *= std::pow(x[i], static_cast<double>(p.a()[i]));
    }
  }
  const double aj = p.a()[j];
  const double deg = 2.0 * p.m()[j];
  const double cj = p.c()[j].to_double();
  if (p.a()[j] == 0) {
    return -rest * deg * cj * std::pow(x[j], deg - 1.0) / (den * den);
  }
  // d/dx_j [x_j^a N / D] = x_j^(a-1) N / D * (a - 2m c_j x_j^(2m) / D)
  const double lead = (p.a()[j] == 1 ? 1.0 : std::pow(x[j], aj - 1.0)) * rest / den;
  const double share = cj * std::pow(x[j], deg) / den;
  return lead * (aj - deg * share);
}

std::vector<double> numeric_gradient(const Profile& p, std::span<const double> x, double h) {
  const Evaluator f(p);
  std::vector<double> grad;
  grad.reserve(x.size());
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const double up = f(probe);
    probe[j] = x[j] - h;
    const double down = f(probe);
    probe[j] = x[j];
    grad.push_back((up - down) / (2.0 * h));
  }
  return grad;
}

std::string_view to_string(C1Verdict v) { return v == C1Verdict::Yes ? "C1_YES" : "UNKNOWN"; }

C1Report c1_sufficient(const Profile& p) {
  const GeneralizedProfile gp = generalize(p);
  C1Report report;
  report.sigma = sigma(gp);
  report.max_ratio = gp.ratio(0);
  for (std::size_t i = 1; i < gp.n(); ++i) {
    report.max_ratio = std::max(report.max_ratio, gp.ratio(i));
  }
  report.condition_holds = report.sigma > ExactRational(1) + report.max_ratio;
  const bool all_positive =
      std::all_of(p.a().begin(), p.a().end(), [](Exponent a) { return a >= 1; });
  report.applicable = p.n() > 1 && all_positive;
  if (!report.applicable) {
    report.reason = p.n() < 2 ? "the sufficient condition is stated for n > 1 variables"
                              : "the sufficient condition needs every exponent a_i >= 1";
  } else if (!report.condition_holds) {
    report.reason = "sigma <= 1 + max_j a_j/(2 m_j); the condition is sufficient only";
  }
  report.verdict =
      report.applicable && report.condition_holds ? C1Verdict::Yes : C1Verdict::Unknown;
  return report;
}

} // namespace limitcert
