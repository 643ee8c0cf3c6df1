#pragma once

// Floating-point side of the library: evaluation of f, closed-form line
// maxima, a sampling oracle over shrinking shells, derivatives and the C^1
// sufficiency test. Nothing here feeds back into the exact decision.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "limitcert/kernel.hpp"
#include "limitcert/witness.hpp"

namespace limitcert {

/// |x|^d for d >= 0, with 0^d = 0 for d > 0 and 0^0 = 1.
double abs_pow(double x, double d);

/// f(x) = prod x_i^a_i / sum c_i x_i^(2 m_i). At the origin returns 0 when
/// sigma > 1 (the continuous extension) and throws std::domain_error
/// otherwise. Overflow comes back as +-infinity. Falls back to log-space
/// evaluation when intermediate powers under- or overflow.
double eval_f(const Profile& p, std::span<const double> x);

/// Generalized overload: prod |x_i|^d_i / sum x_i^(2 m_i).
double eval_f(const GeneralizedProfile& gp, std::span<const double> x);

/// phi(t) = f(x_1, ..., x_{j-1}, t, x_{j+1}, ..., x_n) with |x_i| for the
/// other coordinates; x_rest holds the n - 1 coordinates other than j.
double line_restriction(const GeneralizedProfile& gp, std::size_t j,
                        std::span<const double> x_rest, double t);

/// Maximizer of phi on [0, inf):
/// t* = (d_j / (2 m_j - d_j))^(1/(2 m_j)) * S^(1/(2 m_j)), S = sum_{i != j} x_i^(2 m_i).
/// Throws std::invalid_argument unless 0 < d_j < 2 m_j and S > 0.
double line_max_point(const GeneralizedProfile& gp, std::size_t j, std::span<const double> x_rest);

/// phi(t*) = K * g(x_rest)^(1 - d_j/(2 m_j)), g the (n-1)-variable instance with
/// exponents d_i / (1 - d_j/(2 m_j)). Same preconditions as line_max_point.
double line_max_value(const GeneralizedProfile& gp, std::size_t j, std::span<const double> x_rest);

/// (lambda_1 t^p_1, ..., lambda_N t^p_N). Coordinates may underflow to 0 for
/// small t; eval_along_path does not go through this point.
std::vector<double> path_point(const RoyalPath& path, double t);

/// f along the royal path at parameter t > 0; equals g_lambda * t^e. Requires
/// unit coefficients (std::invalid_argument otherwise) and t > 0.
double eval_along_path(const Profile& p, const RoyalPath& path, double t);

enum class Trend { TendsToZero, BoundedAway, Diverges, Inconclusive };

std::string_view to_string(Trend t);

struct ProbeOptions {
  /// TENDS_TO_ZERO needs non-increasing estimates with last < decay_factor * first.
  double decay_factor = 1e-3;
  /// DIVERGES needs last >= growth_factor * first.
  double growth_factor = 10.0;
  /// BOUNDED_AWAY needs max <= band_factor * min with min > 0.
  double band_factor = 10.0;
  /// Also evaluate the lambda = (1, ..., 1) royal-path point on every shell.
  bool inject_royal_path = true;
};

struct ProbeReport {
  std::vector<double> radii;
  std::vector<double> sup_estimates;
  std::size_t samples_per_shell = 0;
  std::uint64_t seed = 0;
  Trend trend_verdict = Trend::Inconclusive;
};

/// Max of |f| over n_samples points on the sup-norm sphere of radius r: pick
/// a face uniformly, fill the other coordinates uniformly in [-r, r]. Sample k
/// is a pure function of (seed, shell_index, k). With inject_royal_path the
/// royal-path point scaled onto the shell is included.
double shell_sup(const Profile& p, double r, std::size_t n_samples, std::uint64_t seed,
                 std::uint64_t shell_index = 0, bool inject_royal_path = false);

/// Classifies a sequence of shell estimates taken at decreasing radii.
Trend classify_trend(std::span<const double> estimates, const ProbeOptions& options = {});

/// Throws std::invalid_argument unless radii has >= 3 strictly decreasing
/// positive entries and n_samples >= 1.
ProbeReport limit_probe(const Profile& p, std::vector<double> radii, std::size_t n_samples,
                        std::uint64_t seed, const ProbeOptions& options = {});

/// `count` geometrically spaced values from first to last inclusive.
std::vector<double> geometric_grid(double first, double last, std::size_t count);

/// Quotient-rule value of df/dx_j off the origin (std::domain_error at the origin).
double partial_derivative(const Profile& p, std::size_t j, std::span<const double> x);

/// Central differences (f(x + h e_j) - f(x - h e_j)) / (2h).
std::vector<double> numeric_gradient(const Profile& p, std::span<const double> x, double h);

enum class C1Verdict { Yes, Unknown };

std::string_view to_string(C1Verdict v);

struct C1Report {
  ExactRational sigma;
  /// max_j a_j / (2 m_j)
  ExactRational max_ratio;
  /// sigma > 1 + max_ratio
  bool condition_holds = false;
  /// n > 1 and every a_i >= 1.
  bool applicable = false;
  /// Yes iff applicable && condition_holds; the test is sufficient only.
  C1Verdict verdict = C1Verdict::Unknown;
  /// Why the verdict is Unknown; empty for Yes.
  std::string reason;
};

C1Report c1_sufficient(const Profile& p);

} // namespace limitcert
