#include "invfac/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "invfac/exact_core.hpp"
#include "invfac/oracles.hpp"
#include "invfac/representations.hpp"
#include "invfac/series_engine.hpp"
#include "invfac/transforms.hpp"

namespace invfac {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Recorder {
 public:
  Recorder(std::string prefix, double tol_scale) : prefix_(std::move(prefix)), scale_(tol_scale) {}

  void within(const std::string& name, double lhs, double rhs, double tolerance) {
    add(name, lhs, rhs, tolerance * scale_, Comparison::Within);
  }
  void beyond(const std::string& name, double lhs, double rhs, double threshold) {
    add(name, lhs, rhs, threshold, Comparison::Beyond);
  }
  void at_most(const std::string& name, double lhs, double limit) { add(name, lhs, limit, 0.0, Comparison::AtMost); }
  /// Number of mismatching items in an exact comparison.
  void exact(const std::string& name, std::size_t mismatches) {
    add(name, static_cast<double>(mismatches), 0.0, 0.0, Comparison::Within);
  }

  std::vector<VerifyEntry> take() { return std::move(entries_); }

 private:
  void add(const std::string& name, double lhs, double rhs, double tolerance, Comparison comparison) {
    VerifyEntry e;
    e.name = prefix_ + "/" + name;
    e.lhs = lhs;
    e.rhs = rhs;
    e.abs_diff = std::abs(lhs - rhs);
    e.tolerance = tolerance;
    e.comparison = comparison;
    switch (comparison) {
      case Comparison::Within:
        e.pass = e.abs_diff <= tolerance;
        break;
      case Comparison::Beyond:
        e.pass = e.abs_diff > tolerance;
        break;
      case Comparison::AtMost:
        e.pass = lhs <= rhs + tolerance;
        break;
    }
    if (std::isnan(e.abs_diff)) e.pass = false;
    entries_.push_back(std::move(e));
  }

  std::string prefix_;
  double scale_;
  std::vector<VerifyEntry> entries_;
};

struct Check {
  std::string name;
  std::function<void(Recorder&)> run;
};

std::string fmt(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

EvalResult eval_entry(const std::string& name, const Params& params, double z, double tol = kDefaultTolerance,
                      std::size_t max_terms = kDefaultMaxTerms) {
  return evaluate(*find_representation(name), params, z, tol, max_terms);
}

double closed_entry(const std::string& name, const Params& params, double z) {
  const Representation& rep = *find_representation(name);
  return rep.closed_form(resolve_params(rep, params), z);
}

/// Truncated power series product, degree <= max_deg.
std::vector<BigRational> series_mul(const std::vector<BigRational>& a, const std::vector<BigRational>& b,
                                    std::size_t max_deg) {
  std::vector<BigRational> out(max_deg + 1, BigRational(0));
  for (std::size_t i = 0; i < a.size() && i <= max_deg; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= max_deg; ++j) out[i + j] += a[i] * b[j];
  }
  for (auto& c : out) c.canonicalize();
  return out;
}

/// Counts n <= max_n, k <= max_k where entry(n, k) / n! differs from the x^n
/// coefficient of base(x)^k / k!.
template <class Entry>
std::size_t egf_mismatches(const std::vector<BigRational>& base, std::size_t max_k, std::size_t max_n,
                           const Entry& entry) {
  std::size_t bad = 0;
  std::vector<BigRational> power(max_n + 1, BigRational(0));
  power[0] = 1;
  for (std::size_t k = 0; k <= max_k; ++k) {
    if (k > 0) power = series_mul(power, base, max_n);
    const BigRational k_fact(factorial(k));
    for (std::size_t n = 0; n <= max_n; ++n) {
      BigRational expected = power[n] / k_fact;
      BigRational actual(entry(n, k), factorial(n));
      expected.canonicalize();
      actual.canonicalize();
      if (expected != actual) ++bad;
    }
  }
  return bad;
}

void check_stirling_tables(Recorder& r) {
  const auto start = Clock::now();
  std::size_t bad_rows = 0;
  for (std::size_t n = 0; n <= 30; ++n) {
    if (stirling1_table().row(n) != rising_factorial_coeffs(n)) ++bad_rows;
  }
  r.exact("rows_vs_rising_factorial", bad_rows);

  constexpr std::size_t max_n = 20;
  std::vector<BigRational> minus_log(max_n + 1, BigRational(0));  // -ln(1-x)
  std::vector<BigRational> exp_minus_one(max_n + 1, BigRational(0));  // e^x - 1
  for (std::size_t n = 1; n <= max_n; ++n) {
    minus_log[n] = BigRational(1, n);
    exp_minus_one[n] = BigRational(BigInt(1), factorial(n));
  }
  r.exact("egf_first_kind", egf_mismatches(minus_log, 5, max_n, stirling1_unsigned));
  r.exact("egf_second_kind", egf_mismatches(exp_minus_one, 5, max_n, stirling2));
  r.at_most("runtime_seconds", seconds_since(start), 1.0);
}

void check_zeta_partial_sums(Recorder& r) {
  const auto start = Clock::now();
  constexpr std::size_t N = 10000;
  for (std::size_t k = 1; k <= 3; ++k) {
    const double exact = oracles::zeta_direct(static_cast<int>(k + 1)).value;
    const double s1 = zeta_partial_sum(k, N);
    const double s2 = zeta_partial_sum(k, 2 * N);
    const double w1 = std::pow(std::log(static_cast<double>(N)), static_cast<double>(k) - 1.0);
    const double w2 = std::pow(std::log(static_cast<double>(2 * N)), static_cast<double>(k) - 1.0);
    const std::string tag = "k=" + std::to_string(k);
    r.within(tag + "/N=10000", s1, exact, 5e-4 * w1);
    r.at_most(tag + "/doubling_halves_scaled_error", std::abs(s2 - exact) / w2, 0.5 * std::abs(s1 - exact) / w1);
  }
  r.at_most("runtime_seconds", seconds_since(start), 5.0);
}

void check_hurwitz(Recorder& r) {
  const double half_pi_sq = std::numbers::pi * std::numbers::pi / 2.0;
  r.within("a=1/2/N=10000", hurwitz_partial_sum(1, 0.5, 10000), half_pi_sq, 2e-3);
  std::size_t bad = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t n = 0; n <= 60; ++n) {
      if (hurwitz_coefficient(k, BigRational(1), n) != zeta_coefficient(k, n)) ++bad;
    }
  }
  r.exact("a=1_coefficients_equal_zeta", bad);
}

void check_alt_sum(Recorder& r) {
  for (int n = 0; n <= 10; ++n) {
    r.within("n=" + std::to_string(n), alt_sum_closed_form(static_cast<std::size_t>(n)),
             oracles::alt_inverse_factorial_direct(n).value, 1e-8);
  }
}

void check_polylog(Recorder& r) {
  const auto start = Clock::now();
  const struct {
    std::size_t k;
    double x;
    const char* tag;
  } cases[] = {{1, 0.5, "Li2(1/2)"}, {2, 0.5, "Li3(1/2)"}, {1, -0.5, "Li2(-1/2)"}};
  for (const auto& c : cases) {
    const EvalResult e = polylog_via_stirling(c.k, c.x, 1e-12);
    r.within(c.tag, e.value, oracles::polylog_direct(static_cast<int>(c.k + 1), c.x).value, 1e-10);
  }
  r.at_most("runtime_seconds", seconds_since(start), 2.0);
}

void check_antiderivative(Recorder& r) {
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    BigRational expected(BigInt(1), factorial(n) * static_cast<unsigned long>(n));
    expected.canonicalize();
    if (pn_polynomial(n).evaluate(BigRational(1)) != expected) ++bad;
  }
  r.exact("f_n(1)_exact_n=1..10", bad);
  for (double x : {0.45, 0.55}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      r.within("hybrid_vs_closed/n=" + std::to_string(n) + "/x=" + fmt(x), f_antiderivative(n, x),
               f_antiderivative_closed(n, x), 1e-10);
    }
  }
}

void check_rational_closed_forms(Recorder& r) {
  const struct {
    const char* name;
    Params params;
    const char* tag;
  } entries[] = {
      {"reciprocal", {}, "reciprocal"},
      {"reciprocal_sq", {}, "reciprocal_sq"},
      {"rational_p", {{"p", BigRational(1)}}, "rational_p(1)"},
      {"pochhammer_ratio", {{"w", BigRational(1, 2)}}, "pochhammer_ratio(1/2)"},
      {"pochhammer_ratio", {{"w", BigRational(3, 2)}}, "pochhammer_ratio(3/2)"},
      {"k2_series", {}, "k2_series"},
  };
  for (const auto& e : entries) {
    for (double z : {3.0, 5.0, 10.0}) {
      const EvalResult result = eval_entry(e.name, e.params, z);
      r.within(std::string(e.tag) + "/z=" + fmt(z), result.value, closed_entry(e.name, e.params, z),
               10.0 * result.error_estimate);
    }
  }
  const FactorialSeries reciprocal = find_representation("reciprocal")->series(Params{});
  r.within("raabe_reciprocal/z=3", raabe_diagnostic(reciprocal, 3.0, 100, 2000), 3.0, 0.1);
}

void check_trigamma(Recorder& r) {
  for (double z : {1.0, 2.5, 10.0}) {
    const EvalResult e = eval_entry("trigamma_fac", {}, z, kDefaultTolerance, 100000);
    r.within("z=" + fmt(z), e.value, oracles::trigamma_direct(z).value, 1e-8);
  }
}

void check_nielsen_beta(Recorder& r) {
  const double ln2 = std::numbers::ln2;
  for (auto [z, expected] : {std::pair{1.0, ln2}, std::pair{2.0, 1.0 - ln2}}) {
    const EvalResult e = eval_entry("nielsen_beta_fac", {}, z, 1e-15, 60);
    r.within("z=" + fmt(z), e.value, expected, 1e-12);
    r.at_most("z=" + fmt(z) + "/terms_used", static_cast<double>(e.terms_used), 60.0);
  }
}

void check_incgamma(Recorder& r) {
  const struct {
    double z;
    double x;
    double expected;
  } cases[] = {{2.0, 1.0, 1.0 - 2.0 / std::numbers::e}, {3.0, 2.0, 2.0 - 10.0 * std::exp(-2.0)}};
  for (const auto& c : cases) {
    const Params params{{"x", BigRational(static_cast<long>(c.x))}};
    const EvalResult e = eval_entry("incgamma", params, c.z, 1e-15);
    const double value = e.value * std::exp(c.z * std::log(c.x) - c.x);
    const std::string tag = "z=" + fmt(c.z) + "/x=" + fmt(c.x);
    r.within(tag + "/closed_form", value, c.expected, 1e-12);
    r.within(tag + "/quadrature", value, oracles::gamma_lower_direct(c.z, c.x).value, 1e-9);
  }
}

void check_binet(Recorder& r) {
  const BigRational twelfth(1, 12);
  r.exact("a_1=a_2=1/12", (binet_coefficient(1) != twelfth) + (binet_coefficient(2) != twelfth));
  r.within("lnGamma(5)", binet_log_gamma(5.0, 1e-13, 400).value, std::log(24.0), 1e-4);
  r.within("lnGamma(10)", binet_log_gamma(10.0, 1e-13, 400).value, std::log(362880.0), 1e-6);
}

void check_log_shift_minus(Recorder& r) {
  const Representation& rep = *find_representation("log_shift_minus");
  const std::size_t budget = rep.term_budget.value_or(kDefaultMaxTerms);
  for (double z : {2.0, 5.0}) {
    const EvalResult e = evaluate(rep, {}, z, kDefaultTolerance, budget);
    r.within("plus_d_n/z=" + fmt(z), e.value, rep.closed_form({}, z), 1e-9);
  }
  const FactorialSeries alternating = sequential_series("(-1)^n d_n", [] {
    auto rows = std::make_shared<Stirling1RowStream>();
    return [rows]() {
      BigRational d = integrate_stirling_row(rows->row(), false);
      if (rows->index() % 2 == 1) d = -d;
      rows->advance();
      return d;
    };
  });
  const EvalResult alt = eval_factorial_series(alternating, 5.0, kDefaultTolerance, budget);
  r.beyond("alternating_d_n/z=5", alt.value, rep.closed_form({}, 5.0), 1e-3);
}

void check_log_shift_plus(Recorder& r) {
  const Representation& rep = *find_representation("log_shift_plus");
  const std::size_t budget = rep.term_budget.value_or(kDefaultMaxTerms);
  for (double z : {1.0, 4.0}) {
    const EvalResult e = evaluate(rep, {}, z, kDefaultTolerance, budget);
    r.within("z=" + fmt(z), e.value, rep.closed_form({}, z), 1e-9);
  }
}

void check_euler_sums(Recorder& r) {
  constexpr std::size_t terms = 5000000;
  const double zeta3 = oracles::zeta_direct(3).value;
  r.within("k=1/lhs_vs_2zeta3", euler_sum_lhs(1), 2.0 * zeta3, 1e-6);
  r.within("k=1/lhs_vs_rhs_engine", euler_sum_lhs(1), euler_sum_rhs(1, 1e-12, terms).value, 1e-6);
  for (int k : {1, 2}) {
    r.within("k=" + std::to_string(k) + "/lhs_vs_direct", euler_sum_lhs(static_cast<std::size_t>(k)),
             oracles::euler_sum_direct(k).value, 1e-6);
  }
}

std::size_t sequence_mismatches(const RationalSequence& a, const RationalSequence& b) {
  std::size_t bad = a.size() == b.size() ? 0 : 1;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) bad += a[i] != b[i];
  return bad;
}

void check_asymptotic(Recorder& r) {
  constexpr std::size_t length = 12;
  constexpr double z = 10.0;
  const AsymptoticSeries beta = *find_asymptotic("beta_asym", length);
  const AsymptoticSeries trigamma = *find_asymptotic("trigamma_asym", length);

  for (const auto& [series, oracle, tag] :
       {std::tuple{&beta, oracles::beta_direct(z).value, "beta"},
        std::tuple{&trigamma, oracles::trigamma_direct(z).value, "trigamma"}}) {
    const EvalResult e = eval_asymptotic(*series, z);
    r.within(std::string(tag) + "/z=10/first_omitted_term", e.value, oracle, e.error_estimate);
    r.within(std::string(tag) + "/z=10/absolute", e.value, oracle, 1e-9);
  }

  const auto coefficients = [](const char* name) {
    const FactorialSeries fs = find_representation(name)->series(Params{});
    RationalSequence out;
    for (std::size_t n = 0; n < length; ++n) out.push_back(fs.coeff(n));
    return out;
  };
  r.exact("beta/transform_equals_closed_coefficients",
          sequence_mismatches(asymptotic_from_factorial(coefficients("nielsen_beta_fac")), beta.coeffs));
  r.exact("trigamma/transform_equals_closed_coefficients",
          sequence_mismatches(asymptotic_from_factorial(coefficients("trigamma_fac")), trigamma.coeffs));
}

void check_incgamma_asymptotic(Recorder& r) {
  constexpr double z = 15.0;
  constexpr double x = 1.0;
  const AsymptoticSeries series = *find_asymptotic("incgamma_asym", 12, BigRational(1));
  const EvalResult e = eval_asymptotic(series, z);
  const double scale = std::exp(z * std::log(x) - x);
  r.within("x=1/z=15/first_omitted_term", e.value * scale, oracles::gamma_lower_direct(z, x).value,
           e.error_estimate * scale);
}

void check_binomial_identity(Recorder& r) {
  constexpr std::size_t N = 2000;
  for (std::size_t p = 1; p <= 3; ++p) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (std::size_t k = 1; k <= 3; ++k) {
        const BinomialIdentity id = binomial_identity(p, m, k, N);
        r.within("p=" + std::to_string(p) + "/m=" + std::to_string(m) + "/k=" + std::to_string(k),
                 to_double(id.rhs_partial), to_double(id.lhs), 1e-5);
      }
    }
  }
  for (std::size_t m = 0; m <= 2; ++m) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const double kk = static_cast<double>(k);
      double display = 1.0;
      if (m == 1) display = 1.0 - std::pow(2.0, -(kk + 1.0));
      if (m == 2) display = 1.0 - std::pow(2.0, -kk) + std::pow(3.0, -(kk + 1.0));
      r.within("display/m=" + std::to_string(m) + "/k=" + std::to_string(k),
               to_double(binomial_identity(1, m, k, N).rhs_partial), display, 1e-5);
    }
  }
}

void check_transform_round_trip(Recorder& r) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 1000);
  std::size_t bad_stirling = 0;
  std::size_t bad_factorial = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RationalSequence a;
    for (int i = 0; i < 20; ++i) a.push_back(make_rational(num(rng), den(rng)));
    bad_stirling += sequence_mismatches(inverse_stirling_transform(stirling_transform(a)), a) != 0;
    bad_factorial += sequence_mismatches(asymptotic_from_factorial(factorial_series_from_power(a)), a) != 0;
  }
  r.exact("stirling/100_sequences_length_20", bad_stirling);
  r.exact("factorial_asymptotic/100_sequences_length_20", bad_factorial);
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {"01_stirling_tables_exact", check_stirling_tables},
      {"02_zeta_partial_sums", check_zeta_partial_sums},
      {"03_hurwitz_zeta", check_hurwitz},
      {"04_alternating_inverse_factorial_sum", check_alt_sum},
      {"05_polylog_via_stirling", check_polylog},
      {"06_log_antiderivatives", check_antiderivative},
      {"07_rational_closed_forms", check_rational_closed_forms},
      {"08_trigamma_factorial_series", check_trigamma},
      {"09_nielsen_beta_factorial_series", check_nielsen_beta},
      {"10_incomplete_gamma_factorial_series", check_incgamma},
      {"11_binet_log_gamma", check_binet},
      {"12_log_shift_minus_sign", check_log_shift_minus},
      {"13_log_shift_plus", check_log_shift_plus},
      {"14_euler_sums", check_euler_sums},
      {"15_asymptotic_beta_trigamma", check_asymptotic},
      {"16_asymptotic_incomplete_gamma", check_incgamma_asymptotic},
      {"17_binomial_stirling_identity", check_binomial_identity},
      {"18_transform_round_trip", check_transform_round_trip},
  };
  return all;
}

std::vector<VerifyEntry> run_check(const Check& check, double tol_scale) {
  Recorder recorder(check.name, tol_scale);
  try {
    check.run(recorder);
  } catch (const std::exception& ex) {
    // A check that throws fails as a whole; record it as an entry.
    VerifyEntry e;
    e.name = check.name + "/exception: " + ex.what();
    e.lhs = std::numeric_limits<double>::quiet_NaN();
    e.abs_diff = e.lhs;
    auto entries = recorder.take();
    entries.push_back(e);
    return entries;
  }
  return recorder.take();
}

}  // namespace

std::vector<std::string> verify_check_names() {
  std::vector<std::string> names;
  for (const auto& c : checks()) names.push_back(c.name);
  return names;
}

VerifyReport run_verify(const VerifyOptions& options) {
  const auto start = Clock::now();
  std::vector<const Check*> selected;
  for (const auto& c : checks()) {
    if (c.name.find(options.filter) != std::string::npos) selected.push_back(&c);
  }

  VerifyReport report;
  if (options.parallel) {
    std::vector<std::future<std::vector<VerifyEntry>>> pending;
    for (const Check* c : selected) {
      pending.push_back(std::async(std::launch::async, run_check, std::cref(*c), options.tol_scale));
    }
    for (auto& f : pending) {
      auto entries = f.get();
      report.entries.insert(report.entries.end(), entries.begin(), entries.end());
    }
  } else {
    for (const Check* c : selected) {
      auto entries = run_check(*c, options.tol_scale);
      report.entries.insert(report.entries.end(), entries.begin(), entries.end());
    }
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const VerifyEntry& a, const VerifyEntry& b) { return a.name < b.name; });
  for (const auto& e : report.entries) report.overall_pass = report.overall_pass && e.pass;
  report.seconds = seconds_since(start);
  return report;
}

const char* comparison_symbol(Comparison c) {
  switch (c) {
    case Comparison::Within:
      return "<=";
    case Comparison::Beyond:
      return ">";
    case Comparison::AtMost:
      return "lhs<=rhs";
  }
  return "?";
}

}  // namespace invfac
