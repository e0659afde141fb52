#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>

#include "invfac/rational.hpp"
#include "invfac/transforms.hpp"

namespace invfac {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDefaultMaxTerms = 200000;

/// sum_{n>=0} coeff(n) / (z(z+1)...(z+n)).
struct FactorialSeries {
  std::function<BigRational(std::size_t)> coeff;
  std::string description;
  /// Optional float generator factory yielding a_0, a_1, ... in order. When
  /// set, the float evaluators use it instead of converting coeff(n), which
  /// keeps long runs cheap when the exact coefficients grow large.
  std::function<std::function<ScaledDouble()>()> scaled;
};

/// Formal sum_{k>=0} coeffs[k] / z^(k+1).
struct AsymptoticSeries {
  RationalSequence coeffs;
  std::string description;
  /// True when the coefficients past the list are known to be zero, so the
  /// list is an exact polynomial in 1/z rather than a truncated expansion.
  bool finite = false;
};

struct EvalResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double error_estimate = std::numeric_limits<double>::infinity();
  bool converged = false;
};

/// Builds a FactorialSeries from a generator factory. Each generator yields
/// a_0, a_1, ... on successive calls. Sequential access advances one step per
/// call; asking for an earlier index restarts a fresh generator. The memo is
/// internally locked, so the series may be shared between threads.
FactorialSeries sequential_series(std::string description,
                                  std::function<std::function<BigRational()>()> make_generator);

/// Sums terms t_0, t_1, ... pulled from next_term, in order, with
/// compensated accumulation.
///
/// Stops at the first N >= 4 where the last three terms are each at most
/// tol * max(|S|, 1e-300), |t_N| <= |t_(N-1)|, and the tail estimate is at
/// most tol * max(1, |S|). The tail estimate comes from the last pair of
/// consecutive nonzero terms: geometric (ratio r < 0.9) gives |t| r/(1-r),
/// power-law (Raabe ratio rho > 1.05) gives |t| N/(rho-1); when both apply
/// the larger is used. Three exact zeros after a nonzero partial sum end the
/// series with a zero tail.
EvalResult sum_terms(const std::function<double()>& next_term, double tol, std::size_t max_terms);

/// Evaluates the factorial series at real z > 0. Throws DomainError for z <= 0.
EvalResult eval_factorial_series(const FactorialSeries& fs, double z, double tol = kDefaultTolerance,
                                 std::size_t max_terms = kDefaultMaxTerms);

/// Float partial sum S_N over n = 0..N, using the same term recurrence and
/// accumulation as eval_factorial_series.
double partial_sum_float(const FactorialSeries& fs, double z, std::size_t last_index);

/// Exact partial sum over n = 0..N. Throws PoleError if z is one of 0, -1, ..., -N.
BigRational partial_sum_exact(const FactorialSeries& fs, const BigRational& z, std::size_t last_index);

/// Estimates lim n (t_n / t_(n+1) - 1) from samples n_lo..n_hi by Richardson
/// extrapolation in 1/n. Returns +infinity when the samples grow linearly in
/// n, i.e. the terms decay geometrically or faster.
double raabe_diagnostic(const FactorialSeries& fs, double z, std::size_t n_lo, std::size_t n_hi);

/// Optimal truncation: sums the terms before the smallest nonzero term k*,
/// reports |t_k*| (plus a rounding allowance) as the error estimate, and sets
/// converged only if k* is not the last nonzero coefficient available.
/// Finite series are summed completely with zero error.
EvalResult eval_asymptotic(const AsymptoticSeries& series, double z);

}  // namespace invfac
