#include "invfac/representations.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "invfac/errors.hpp"
#include "invfac/exact_core.hpp"
#include "invfac/oracles.hpp"
#include "stirling_ratio.hpp"

namespace invfac {

// --- plain-sum constants -------------------------------------------------

BigRational zeta_coefficient(std::size_t k, std::size_t n) {
  if (n == 0) return 0;
  BigRational value(stirling1_unsigned(n, k), factorial(n) * static_cast<unsigned long>(n));
  value.canonicalize();
  return value;
}

BigRational hurwitz_coefficient(std::size_t k, const BigRational& a, std::size_t n) {
  if (n == 0) return 0;
  BigRational rising = 1;
  for (std::size_t j = 0; j < n; ++j) rising *= a + static_cast<unsigned long>(j);
  if (rising == 0) throw PoleError("hurwitz_coefficient: a hits a nonpositive integer");
  BigRational value = BigRational(stirling1_unsigned(n, k)) / (rising * static_cast<unsigned long>(n));
  value.canonicalize();
  return value;
}

namespace {

void require_order(std::size_t k) {
  if (k < 1) throw DomainError("the zeta family needs k >= 1 (zeta(1) diverges)");
}

/// Terms [n,k]/(n! n) * n!/(a)_n for n = 0, 1, ...; a = 1 gives the zeta terms.
class HurwitzTerms {
 public:
  HurwitzTerms(std::size_t k, double a) : k_(k), a_(a), columns_(k) {}

  double next() {
    double term = 0.0;
    if (n_ >= 1) term = columns_.at(k_) * ratio_ / static_cast<double>(n_);
    ratio_ *= static_cast<double>(n_ + 1) / (a_ + static_cast<double>(n_));
    columns_.advance();
    ++n_;
    return term;
  }

 private:
  std::size_t k_;
  double a_;
  detail::StirlingRatioColumns columns_;
  std::size_t n_ = 0;
  double ratio_ = 1.0;  // n! / (a)_n
};

/// psi'(n) for n >= 20; zeta(2) - H_(n-1)^(2) would cancel to ~1/n.
double trigamma_large(double n) {
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  return inv + 0.5 * inv2 + inv * inv2 * (1.0 / 6.0 + inv2 * (-1.0 / 30.0 + inv2 * (1.0 / 42.0 + inv2 * (-1.0 / 30.0))));
}

}  // namespace

double zeta_partial_sum(std::size_t k, std::size_t last_index) { return hurwitz_partial_sum(k, 1.0, last_index); }

double hurwitz_partial_sum(std::size_t k, double a, std::size_t last_index) {
  require_order(k);
  if (!(a > 0.0)) throw DomainError("Hurwitz zeta needs a > 0");
  HurwitzTerms terms(k, a);
  detail::CompensatedSum sum;
  for (std::size_t n = 0; n <= last_index; ++n) sum.add(terms.next());
  return sum.value();
}

EvalResult zeta_via_stirling(std::size_t k, double tol, std::size_t max_terms) {
  return hurwitz_via_stirling(k, 1.0, tol, max_terms);
}

EvalResult hurwitz_via_stirling(std::size_t k, double a, double tol, std::size_t max_terms) {
  require_order(k);
  if (!(a > 0.0)) throw DomainError("Hurwitz zeta needs a > 0");
  HurwitzTerms terms(k, a);
  return sum_terms([&terms] { return terms.next(); }, tol, max_terms);
}

EvalResult euler_sum_rhs(std::size_t k, double tol, std::size_t max_terms) {
  require_order(k);
  detail::StirlingRatioColumns columns(k);
  detail::CompensatedSum h2;  // H_(n-1)^(2)
  std::size_t n = 0;
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  auto next = [&]() {
    double term = 0.0;
    if (n >= 1) {
      term = columns.at(k) * (n < 20 ? zeta2 - h2.value() : trigamma_large(static_cast<double>(n)));
      h2.add(1.0 / (static_cast<double>(n) * static_cast<double>(n)));
    }
    columns.advance();
    ++n;
    return term;
  };
  return sum_terms(next, tol, max_terms);
}

// --- antiderivatives and the polylogarithm ---------------------------------

BigRational PnPolynomial::evaluate(const BigRational& x) const {
  const BigRational shift = x - 1;
  BigRational acc = 0;
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * shift + coeffs[j];
  acc.canonicalize();
  return acc;
}

double PnPolynomial::evaluate(double x) const {
  const double shift = x - 1.0;
  double acc = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * shift + to_double(coeffs[j]);
  return acc;
}

PnPolynomial pn_polynomial(std::size_t n) {
  if (n < 1) throw DomainError("pn_polynomial needs n >= 1");
  PnPolynomial poly;
  poly.n = n;
  poly.coeffs.resize(n + 1);
  const BigInt n_fact = factorial(n);
  poly.coeffs[n] = harmonic(n) / BigRational(n_fact);
  poly.coeffs[n].canonicalize();
  for (std::size_t j = 0; j < n; ++j) {
    BigRational c(binomial(n, n - j), n_fact * static_cast<unsigned long>(n - j));
    c.canonicalize();
    poly.coeffs[j] = std::move(c);
  }
  return poly;
}

namespace {

constexpr std::size_t kClosedFormMaxOrder = 150;
constexpr double kClosedFormMaxCondition = 1e4;

struct ScaledClosed {
  double value = 0.0;      // n! f_n(x)
  double magnitude = 0.0;  // sum of |parts|, for the conditioning test
};

/// n! f_n(x) = H_n (x-1)^n + sum_{k=1}^n C(n,k) (x-1)^(n-k) / k + (-1)^(n-1) (1-x)^n ln(1-x).
ScaledClosed scaled_closed(std::size_t n, double x) {
  const double shift = x - 1.0;
  double harmonic_n = 0.0;
  for (std::size_t j = 1; j <= n; ++j) harmonic_n += 1.0 / static_cast<double>(j);

  ScaledClosed out;
  auto add = [&out](double part) {
    out.value += part;
    out.magnitude += std::abs(part);
  };
  add(harmonic_n * std::pow(shift, static_cast<double>(n)));
  double binom = 1.0;  // C(n, k)
  for (std::size_t k = 1; k <= n; ++k) {
    binom = binom * static_cast<double>(n - k + 1) / static_cast<double>(k);
    add(binom * std::pow(shift, static_cast<double>(n - k)) / static_cast<double>(k));
  }
  if (x != 1.0) {
    const double sign = n % 2 == 1 ? 1.0 : -1.0;
    add(sign * std::pow(1.0 - x, static_cast<double>(n)) * std::log1p(-x));
  }
  return out;
}

/// n! f_n(x) / x^n = sum_{p>=1} x^p n! / (p(p+1)...(p+n)).
double scaled_series(std::size_t n, double x) {
  const double dn = static_cast<double>(n);
  double term = x / (dn + 1.0);
  double sum = 0.0;
  for (std::size_t p = 1; p < 50000000; ++p) {
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    const double dp = static_cast<double>(p);
    term *= x * dp / (dp + dn + 1.0);
  }
  return sum;
}

void check_antiderivative_domain(std::size_t n, double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("f_n(x) needs -1 <= x <= 1");
  if (x == 1.0 && n == 0) throw DomainError("f_0(1) = -ln(0) diverges");
}

bool use_closed_form(std::size_t n, double x, ScaledClosed* parts) {
  if (n == 0 || x == 1.0) return true;
  if (std::abs(x) < 0.5 || n > kClosedFormMaxOrder) return false;
  *parts = scaled_closed(n, x);
  return parts->magnitude <= kClosedFormMaxCondition * std::abs(parts->value);
}

/// n! f_n(x) / x^n via the hybrid rule.
double scaled_antiderivative(std::size_t n, double x) {
  if (n == 0) return -std::log1p(-x);
  ScaledClosed parts;
  if (use_closed_form(n, x, &parts)) {
    if (x == 1.0) parts = scaled_closed(n, x);
    return parts.value / std::pow(x, static_cast<double>(n));
  }
  return scaled_series(n, x);
}

}  // namespace

double f_antiderivative_closed(std::size_t n, double x) {
  check_antiderivative_domain(n, x);
  if (n == 0) return -std::log1p(-x);
  return scaled_closed(n, x).value / std::tgamma(static_cast<double>(n) + 1.0);
}

double f_antiderivative_series(std::size_t n, double x) {
  check_antiderivative_domain(n, x);
  if (x == 0.0) return 0.0;
  return std::pow(x, static_cast<double>(n)) / std::tgamma(static_cast<double>(n) + 1.0) * scaled_series(n, x);
}

double f_antiderivative(std::size_t n, double x) {
  check_antiderivative_domain(n, x);
  if (x == 0.0) return 0.0;
  if (n == 0) return -std::log1p(-x);
  ScaledClosed parts;
  if (use_closed_form(n, x, &parts)) return f_antiderivative_closed(n, x);
  return f_antiderivative_series(n, x);
}

EvalResult polylog_via_stirling(std::size_t k, double x, double tol, std::size_t max_terms) {
  if (!(std::abs(x) < 1.0) || x == 0.0) throw DomainError("polylog_via_stirling needs 0 < |x| < 1");
  detail::StirlingRatioColumns columns(k);
  std::size_t n = 0;
  auto next = [&]() {
    const double weight = columns.at(k);  // [n,k] / n!
    const double term = weight == 0.0 ? 0.0 : weight * scaled_antiderivative(n, x);
    columns.advance();
    ++n;
    return term;
  };
  return sum_terms(next, tol, max_terms);
}

double alt_sum_closed_form(std::size_t n) {
  double inner = 0.0;
  for (std::size_t k = 1; k <= n; ++k) inner += std::ldexp(1.0, -static_cast<int>(k)) / static_cast<double>(k);
  return std::ldexp(1.0, static_cast<int>(n)) / std::tgamma(static_cast<double>(n) + 1.0) *
         (inner - std::numbers::ln2);
}

double euler_sum_lhs(std::size_t k) {
  if (k < 1) throw DomainError("euler_sum_lhs needs k >= 1");
  auto zeta = [](std::size_t s) { return oracles::zeta_direct(static_cast<int>(s)).value; };
  double cross = 0.0;
  for (std::size_t j = 1; j + 1 <= k; ++j) cross += zeta(j + 1) * zeta(k - j + 1);
  return (static_cast<double>(k) + 3.0) / 2.0 * zeta(k + 2) - 0.5 * cross;
}

// --- log-gamma ---------------------------------------------------------------

namespace {

/// (1/n) sum_k [n,k] k / (2(k+1)(k+2)), the integral of (t - 1/2) t^k summed over row n.
BigRational binet_from_row(const std::vector<BigInt>& row) {
  const std::size_t n = row.size() - 1;
  if (n == 0) return 0;
  BigInt lcm = 1;
  for (unsigned long j = 2; j <= n + 2; ++j) mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), j);
  BigInt numerator = 0;
  BigInt weight;
  for (std::size_t k = 1; k <= n; ++k) {
    if (row[k] == 0) continue;
    mpz_divexact_ui(weight.get_mpz_t(), lcm.get_mpz_t(), (k + 1) * (k + 2));
    numerator += row[k] * weight * static_cast<unsigned long>(k);
  }
  BigRational value(numerator, lcm * static_cast<unsigned long>(2 * n));
  value.canonicalize();
  return value;
}

}  // namespace

BigRational binet_coefficient(std::size_t n) { return binet_from_row(stirling1_table().row(n)); }

EvalResult binet_log_gamma(double z, double tol, std::size_t max_terms) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("log-gamma needs z > 0");
  // sum_{n>=1} a_n / ((z+1)...(z+n)) is the factorial series at z+1 with coefficients a_(m+1).
  const FactorialSeries shifted = sequential_series("binet a_(m+1)", [] {
    auto rows = std::make_shared<Stirling1RowStream>();
    return [rows]() {
      rows->advance();
      return binet_from_row(rows->row());
    };
  });
  EvalResult result = eval_factorial_series(shifted, z + 1.0, tol, max_terms);
  result.value += (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi);
  return result;
}

// --- binomial sums ---------------------------------------------------------

BinomialIdentity binomial_identity(std::size_t p, std::size_t m, std::size_t k, std::size_t last_index) {
  if (p < 1) throw DomainError("binomial_identity needs p >= 1");
  BinomialIdentity out;

  BigRational lhs = 0;
  for (std::size_t j = 0; j <= m; ++j) {
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), j + p, k + 1);
    BigRational term(binomial(m, j), power);
    if (j % 2 == 1) {
      lhs -= term;
    } else {
      lhs += term;
    }
  }
  lhs.canonicalize();
  out.lhs = std::move(lhs);

  // term_n * (N+m+p)! = [n,k] * (n+m)!/n! * (N+m+p)!/(n+m+p)!, an integer, so the
  // whole partial sum is one integer over (N+m+p)!.
  const std::size_t N = last_index;
  std::vector<BigInt> column(N + 1);
  Stirling1ColumnStream columns(k);
  for (std::size_t n = 0; n <= N; ++n) {
    column[n] = columns.at(k);
    columns.advance();
  }
  BigInt numerator = 0;
  BigInt upper_ratio = 1;  // (N+m+p)! / (n+m+p)!
  for (std::size_t n = N + 1; n-- > 0;) {
    if (n < N) upper_ratio *= static_cast<unsigned long>(n + 1 + m + p);
    if (column[n] == 0) continue;
    BigInt lower_ratio = 1;  // (n+m)! / n!
    for (std::size_t i = 1; i <= m; ++i) lower_ratio *= static_cast<unsigned long>(n + i);
    numerator += column[n] * lower_ratio * upper_ratio;
  }
  BigRational rhs(numerator * factorial(p - 1), factorial(N + m + p));
  rhs.canonicalize();
  out.rhs_partial = std::move(rhs);
  return out;
}

// --- asymptotic expansions -------------------------------------------------

std::vector<std::string> asymptotic_names() { return {"beta_asym", "trigamma_asym", "incgamma_asym"}; }

std::optional<AsymptoticSeries> find_asymptotic(std::string_view name, std::size_t length, const BigRational& x) {
  if (length == 0) throw DomainError("asymptotic series need at least one coefficient");
  AsymptoticSeries series;
  series.coeffs.reserve(length);
  if (name == "beta_asym") {
    series.description = "beta(z) ~ sum (-1)^k E_k(0)/2 / z^(k+1)";
    for (std::size_t k = 0; k < length; ++k) {
      BigRational c = euler_poly_at_zero(k) / 2;
      if (k % 2 == 1) c = -c;
      c.canonicalize();
      series.coeffs.push_back(std::move(c));
    }
    return series;
  }
  if (name == "trigamma_asym") {
    series.description = "psi'(z) ~ sum (-1)^k B_k / z^(k+1)";
    for (std::size_t k = 0; k < length; ++k) {
      BigRational c = bernoulli(k);
      if (k % 2 == 1) c = -c;
      series.coeffs.push_back(std::move(c));
    }
    return series;
  }
  if (name == "incgamma_asym") {
    series.description = "gamma(z,x) x^-z e^x ~ sum (-1)^k phi_k(-x) / z^(k+1)";
    const BigRational minus_x = -x;
    for (std::size_t k = 0; k < length; ++k) {
      BigRational c = exponential_poly(k, minus_x);
      if (k % 2 == 1) c = -c;
      series.coeffs.push_back(std::move(c));
    }
    return series;
  }
  return std::nullopt;
}

std::vector<AsymptoticSeries> asymptotic_catalog(std::size_t length, const BigRational& x) {
  std::vector<AsymptoticSeries> out;
  for (const auto& name : asymptotic_names()) out.push_back(*find_asymptotic(name, length, x));
  return out;
}

}  // namespace invfac
