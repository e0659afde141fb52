#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invfac/rational.hpp"
#include "invfac/series_engine.hpp"

namespace invfac {

/// Named exact parameters (k, a, p, w, x, m) of a catalog entry.
class Params {
 public:
  Params() = default;
  Params(std::initializer_list<std::pair<const std::string, BigRational>> init) : values_(init) {}

  void set(const std::string& name, BigRational value) { values_[name] = std::move(value); }
  bool has(const std::string& name) const { return values_.count(name) != 0; }
  const BigRational& at(const std::string& name) const;
  /// Throws DomainError unless the parameter is a nonnegative integer.
  std::size_t natural(const std::string& name) const;
  double real(const std::string& name) const { return to_double(at(name)); }
  const std::map<std::string, BigRational>& values() const { return values_; }

 private:
  std::map<std::string, BigRational> values_;
};

struct ParamSpec {
  std::string name;
  bool integer = false;
  std::optional<BigRational> default_value;
  std::string description;
};

enum class RepresentationKind {
  /// sum a_n / (z(z+1)...(z+n)), a function of z.
  FactorialSeries,
  /// Summed directly by its own term stream, e.g. the zeta constants (no z)
  /// or the log-gamma main terms plus a shifted factorial series.
  DirectSum,
};

struct Representation {
  std::string name;
  RepresentationKind kind = RepresentationKind::FactorialSeries;
  std::vector<ParamSpec> params;
  /// Identity in words, e.g. "1/(z-1) = sum n!/(z)_(n+1)".
  std::string summary;
  std::string domain_text;

  /// FactorialSeries kind: coefficient rule for validated params.
  std::function<FactorialSeries(const Params&)> series;
  /// DirectSum kind: evaluates with the engine's stopping rule.
  std::function<EvalResult(const Params&, double z, double tol, std::size_t max_terms)> direct;
  /// False for constants; z is then ignored.
  bool needs_z = true;
  /// Checks params (and z for FactorialSeries); throws DomainError with a reason.
  std::function<void(const Params&, double z)> check_domain;
  /// Closed form or oracle reference value; empty when there is none.
  std::function<double(const Params&, double z)> closed_form;
  /// Coefficient rules whose per-term cost grows with n (full Stirling rows)
  /// carry a practical term budget that the CLI applies to --max-terms.
  std::optional<std::size_t> term_budget;
};

const std::vector<Representation>& catalog();

/// nullptr when no entry has that key.
const Representation* find_representation(std::string_view name);

/// Fills defaults and rejects missing, unknown, or non-integer parameters.
Params resolve_params(const Representation& rep, const Params& given);

/// Domain check plus evaluation. z is ignored when needs_z is false.
EvalResult evaluate(const Representation& rep, const Params& params, double z, double tol = kDefaultTolerance,
                    std::size_t max_terms = kDefaultMaxTerms);

// --- plain-sum constants -------------------------------------------------

/// [n, k] / (n! n), the n-th term of the Stirling series for zeta(k+1).
BigRational zeta_coefficient(std::size_t k, std::size_t n);
/// [n, k] / (n a(a+1)...(a+n-1)), the n-th term for the Hurwitz zeta(k+1, a).
BigRational hurwitz_coefficient(std::size_t k, const BigRational& a, std::size_t n);

/// sum_{n=k..N} of the zeta terms, in float. k >= 1.
double zeta_partial_sum(std::size_t k, std::size_t last_index);
double hurwitz_partial_sum(std::size_t k, double a, std::size_t last_index);

EvalResult zeta_via_stirling(std::size_t k, double tol = kDefaultTolerance, std::size_t max_terms = kDefaultMaxTerms);
EvalResult hurwitz_via_stirling(std::size_t k, double a, double tol = kDefaultTolerance,
                                std::size_t max_terms = kDefaultMaxTerms);
/// sum_{n>=k} [n, k] psi'(n) / n!, psi'(n) = zeta(2) - H_(n-1)^(2).
EvalResult euler_sum_rhs(std::size_t k, double tol = kDefaultTolerance, std::size_t max_terms = kDefaultMaxTerms);

// --- antiderivatives of -ln(1-x) and the polylogarithm ---------------------

/// P_n(x) = sum_j coeffs[j] (x-1)^j.
struct PnPolynomial {
  std::size_t n = 0;
  std::vector<BigRational> coeffs;

  BigRational evaluate(const BigRational& x) const;
  double evaluate(double x) const;
};

/// n >= 1. coeffs[n] = H_n / n!, coeffs[j] = C(n, n-j) / ((n-j) n!) for j < n.
PnPolynomial pn_polynomial(std::size_t n);

/// f_n(x) = P_n(x) + (-1)^(n-1) (1-x)^n ln(1-x) / n!, f_0 = -ln(1-x).
/// Uses the closed form for |x| >= 1/2 when it is well conditioned, otherwise
/// the direct series sum_p x^(p+n) / (p(p+1)...(p+n)). Domain -1 <= x <= 1,
/// with x = 1 (the limit) only for n >= 1.
double f_antiderivative(std::size_t n, double x);
double f_antiderivative_closed(std::size_t n, double x);
double f_antiderivative_series(std::size_t n, double x);

/// Li_(k+1)(x) = sum_{n>=k} [n, k] f_n(x) / x^n. 0 < |x| < 1.
EvalResult polylog_via_stirling(std::size_t k, double x, double tol = kDefaultTolerance,
                                std::size_t max_terms = kDefaultMaxTerms);

/// (2^n / n!) (sum_{k=1..n} 1/(2^k k) - ln 2).
double alt_sum_closed_form(std::size_t n);

/// ((k+3)/2) zeta(k+2) - (1/2) sum_{j=1}^{k-1} zeta(j+1) zeta(k-j+1). k >= 1.
double euler_sum_lhs(std::size_t k);

// --- log-gamma ---------------------------------------------------------------

/// a_n = (1/n) integral_0^1 (t - 1/2) t(t+1)...(t+n-1) dt; a_0 = 0.
BigRational binet_coefficient(std::size_t n);

/// ln Gamma(z) = (z-1/2) ln z - z + ln sqrt(2 pi) + sum_{n>=1} a_n / ((z+1)...(z+n)).
EvalResult binet_log_gamma(double z, double tol = kDefaultTolerance, std::size_t max_terms = kDefaultMaxTerms);

// --- binomial sums ---------------------------------------------------------

struct BinomialIdentity {
  BigRational lhs;
  BigRational rhs_partial;
};

/// lhs = sum_{j=0}^{m} C(m,j) (-1)^j / (j+p)^(k+1);
/// rhs_partial = (p-1)! sum_{n=0}^{N} [n,k] / (n! (n+m+1)...(n+m+p)). p >= 1.
BinomialIdentity binomial_identity(std::size_t p, std::size_t m, std::size_t k, std::size_t last_index);

// --- asymptotic expansions -------------------------------------------------

inline constexpr std::size_t kAsymptoticCoefficientCap = 200;

/// beta_asym, trigamma_asym and incgamma_asym(x), each with `length`
/// coefficients. incgamma_asym sums to gamma(z, x) x^-z e^x.
std::vector<AsymptoticSeries> asymptotic_catalog(std::size_t length, const BigRational& x = 1);
std::vector<std::string> asymptotic_names();
/// nullopt when the name is not an asymptotic key.
std::optional<AsymptoticSeries> find_asymptotic(std::string_view name, std::size_t length, const BigRational& x = 1);

}  // namespace invfac
