#include "invfac/oracles.hpp"

#include <cmath>
#include <vector>

#include "invfac/errors.hpp"

namespace invfac::oracles {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct SimpsonState {
  std::size_t evaluations = 0;
};

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth, SimpsonState& state) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  state.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, state) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, state);
}

template <class F>
double integrate(const F& f, double a, double b, double tol, SimpsonState& state) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  state.evaluations += 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60, state);
}

}  // namespace

OracleResult zeta_direct(int s) {
  if (s < 2) throw DomainError("zeta_direct needs s >= 2");
  return hurwitz_direct(s, 1.0);
}

OracleResult hurwitz_direct(int s, double a) {
  if (s < 2) throw DomainError("hurwitz_direct needs s >= 2");
  if (!(a > 0.0)) throw DomainError("hurwitz_direct needs a > 0");
  constexpr std::size_t N = 100000;
  const double ds = s;
  KahanSum sum;
  for (std::size_t n = N; n-- > 0;) sum.add(std::pow(static_cast<double>(n) + a, -ds));
  const double tail_base = static_cast<double>(N) + a;
  const double tail = std::pow(tail_base, 1.0 - ds) / (ds - 1.0) + 0.5 * std::pow(tail_base, -ds) +
                      ds / 12.0 * std::pow(tail_base, -ds - 1.0);
  return {sum.sum + tail, N, "direct sum + Euler-Maclaurin tail", std::nullopt};
}

OracleResult polylog_direct(int s, double x) {
  if (s < 1) throw DomainError("polylog_direct needs s >= 1");
  if (!(std::abs(x) < 1.0)) throw DomainError("polylog_direct needs |x| < 1");
  KahanSum sum;
  double power = 1.0;
  std::size_t n = 1;
  for (;; ++n) {
    power *= x;
    const double term = power / std::pow(static_cast<double>(n), s);
    sum.add(term);
    if (std::abs(term) < 1e-16 * std::abs(sum.sum) || term == 0.0) break;
  }
  return {sum.sum, n, "direct power series", std::nullopt};
}

OracleResult beta_direct(double z) {
  if (!(z > 0.0)) throw DomainError("beta_direct needs z > 0");
  constexpr std::size_t M = 1000000;
  KahanSum sum;
  for (std::size_t m = M; m-- > 0;) {
    const double u = 2.0 * static_cast<double>(m) + z;
    sum.add(1.0 / (u * (u + 1.0)));
  }
  const double u = 2.0 * static_cast<double>(M) + z;
  // sum_{m>=M} f(m) ~ integral + f(M)/2 with f(m) = 1/((2m+z)(2m+z+1)).
  const double tail = 0.5 * std::log1p(1.0 / u) + 0.5 / (u * (u + 1.0));
  return {sum.sum + tail, 2 * M, "paired alternating sum + integral tail", std::nullopt};
}

OracleResult trigamma_direct(double z) {
  if (!(z > 0.0)) throw DomainError("trigamma_direct needs z > 0");
  constexpr std::size_t N = 1000000;
  KahanSum sum;
  for (std::size_t n = N; n-- > 0;) {
    const double u = z + static_cast<double>(n);
    sum.add(1.0 / (u * u));
  }
  const double u = z + static_cast<double>(N);
  return {sum.sum + 1.0 / u + 0.5 / (u * u), N, "direct sum + Euler-Maclaurin tail", std::nullopt};
}

OracleResult gamma_lower_direct(double z, double x) {
  if (!(z > 0.0)) throw DomainError("gamma_lower_direct needs z > 0");
  if (!(x > 0.0)) throw DomainError("gamma_lower_direct needs x > 0");

  // Power series x^z e^-x sum x^n / (z(z+1)...(z+n)).
  KahanSum series;
  double term = 1.0 / z;
  std::size_t n = 0;
  for (; n < 100000; ++n) {
    series.add(term);
    if (term < 1e-17 * series.sum) break;
    term *= x / (z + static_cast<double>(n + 1));
  }
  const double prefactor = std::exp(z * std::log(x) - x);
  const double series_value = prefactor * series.sum;

  SimpsonState state;
  double quad = 0.0;
  const double tol = 1e-12 * std::max(series_value, 1e-300);
  if (z >= 1.0) {
    quad = integrate([z](double t) { return t == 0.0 ? (z == 1.0 ? 1.0 : 0.0) : std::exp((z - 1.0) * std::log(t) - t); },
                     0.0, x, tol, state);
  } else {
    // u = t^z removes the endpoint singularity: dt t^(z-1) = du / z.
    const double upper = std::pow(x, z);
    quad = integrate([z](double u) { return std::exp(-std::pow(u, 1.0 / z)) / z; }, 0.0, upper, tol, state);
  }
  return {quad, state.evaluations, "adaptive Simpson quadrature", series_value};
}

OracleResult euler_sum_direct(int k) {
  if (k < 1) throw DomainError("euler_sum_direct needs k >= 1");
  constexpr std::size_t N = 1000000;
  const double power = k + 1.0;
  std::vector<double> terms(N);
  KahanSum harmonic;
  for (std::size_t p = 1; p <= N; ++p) {
    harmonic.add(1.0 / static_cast<double>(p));
    terms[p - 1] = harmonic.sum / std::pow(static_cast<double>(p), power);
  }
  KahanSum sum;
  for (std::size_t i = N; i-- > 0;) sum.add(terms[i]);

  // H_p ~ ln p + gamma + 1/(2p); integrate (ln x + gamma) x^-(k+1) from N and
  // apply the first Euler-Maclaurin endpoint correction.
  const double dn = static_cast<double>(N);
  const double dk = k;
  const double log_term = std::log(dn) + kEulerGamma;
  const double tail = log_term / (dk * std::pow(dn, dk)) + 1.0 / (dk * dk * std::pow(dn, dk)) -
                      log_term / (2.0 * std::pow(dn, dk + 1.0)) + 1.0 / (2.0 * (dk + 1.0) * std::pow(dn, dk + 1.0));
  return {sum.sum + tail, N, "direct sum + asymptotic tail", std::nullopt};
}

OracleResult alt_inverse_factorial_direct(int n) {
  if (n < 0) throw DomainError("alt_inverse_factorial_direct needs n >= 0");
  constexpr std::size_t pairs = 100000;
  constexpr std::size_t extra = 12;
  const double dn = n;

  // u_p = 1 / (p(p+1)...(p+n)); u_1 = 1/(n+1)!, u_(p+1) = u_p p / (p+n+1).
  double u = 1.0;
  for (int j = 2; j <= n + 1; ++j) u /= j;

  KahanSum sum;
  std::size_t p = 1;
  for (std::size_t m = 0; m < pairs; ++m) {
    // -u_p + u_(p+1) = -u_p (n+1) / (p+n+1)
    const double dp = static_cast<double>(p);
    sum.add(-u * (dn + 1.0) / (dp + dn + 1.0));
    u *= dp / (dp + dn + 1.0);
    u *= (dp + 1.0) / (dp + dn + 2.0);
    p += 2;
  }
  double running = sum.sum;
  std::vector<double> partial{running};
  for (std::size_t i = 0; i < extra; ++i) {
    const double dp = static_cast<double>(p);
    running += (p % 2 == 1 ? -u : u);
    partial.push_back(running);
    u *= dp / (dp + dn + 1.0);
    ++p;
  }
  // Repeated averaging of consecutive partial sums of an alternating series.
  while (partial.size() > 1) {
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    partial.pop_back();
  }
  return {partial.front(), 2 * pairs + extra, "paired alternating sum + repeated averaging", std::nullopt};
}

}  // namespace invfac::oracles
