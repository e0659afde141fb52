#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace invfac::oracles {

/// Brute-force reference values. Nothing here calls into the series engine
/// or the representation catalog; the two sides are meant to check each other.
struct OracleResult {
  double value = 0.0;
  std::size_t terms_or_nodes = 0;
  std::string method;
  /// Second, independent estimate where the oracle computes one.
  std::optional<double> cross_check;
};

/// sum_{n<N} n^-s plus Euler-Maclaurin tail, N = 1e5. s >= 2.
OracleResult zeta_direct(int s);

/// sum_{n>=0} (n+a)^-s plus Euler-Maclaurin tail, N = 1e5. s >= 2, a > 0.
OracleResult hurwitz_direct(int s, double a);

/// sum x^n / n^s until the term drops below 1e-16 of the partial sum. |x| < 1.
OracleResult polylog_direct(int s, double x);

/// Nielsen's beta: sum (-1)^n / (n+z), summed as 1e6 positive pairs plus an
/// integral tail. z > 0.
OracleResult beta_direct(double z);

/// sum_{n<N} (z+n)^-2 + 1/(z+N) + 1/(2(z+N)^2), N = 1e6. z > 0.
OracleResult trigamma_direct(double z);

/// Lower incomplete gamma. value is adaptive Simpson quadrature of
/// t^(z-1) e^-t on [0, x]; cross_check is the convergent power series.
OracleResult gamma_lower_direct(double z, double x);

/// sum_{p<=N} H_p / p^(k+1) with an asymptotic tail, N = 1e6. k >= 1.
OracleResult euler_sum_direct(int k);

/// sum_{p>=1} (-1)^p / (p(p+1)...(p+n)), paired terms plus repeated
/// averaging of the final partial sums.
OracleResult alt_inverse_factorial_direct(int n);

}  // namespace invfac::oracles
