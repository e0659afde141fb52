#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <numbers>

#include "invfac/errors.hpp"
#include "invfac/exact_core.hpp"
#include "invfac/series_engine.hpp"

using namespace invfac;

namespace {

BigRational fact(std::size_t n) { return BigRational(factorial(n)); }

// Coefficients kept as running products so long runs stay linear in n.
FactorialSeries running(std::string label, std::function<BigRational(std::size_t, const BigRational&)> step,
                        BigRational first) {
  return sequential_series(std::move(label), [step, first] {
    return [step, first, n = std::size_t{0}, a = BigRational(0)]() mutable {
      a = n == 0 ? first : step(n, a);
      ++n;
      return a;
    };
  });
}

// a_n = n!
FactorialSeries factorials() {
  return running("n!", [](std::size_t n, const BigRational& a) -> BigRational { return a * n; }, 1);
}

// a_n = n! H_n, via a_n = n a_(n-1) + (n-1)!
FactorialSeries factorial_harmonic() {
  return sequential_series("n! H_n", [] {
    return [n = std::size_t{0}, a = BigRational(0), f = BigRational(1)]() mutable {
      if (n > 0) {
        a = a * n + f;
        f *= n;
      }
      ++n;
      return a;
    };
  });
}

// a_n = n!/2^(n+1)
FactorialSeries half_powers() {
  return running("n!/2^(n+1)", [](std::size_t n, const BigRational& a) -> BigRational { return a * n / 2; },
                 BigRational(1, 2));
}

// a_n = n!/(n+1)
FactorialSeries over_next() {
  return running(
      "n!/(n+1)", [](std::size_t n, const BigRational& a) -> BigRational { return a * (n * n) / (n + 1); }, 1);
}

FactorialSeries kernel0() {
  return {[](std::size_t n) -> BigRational { return BigRational(n == 0 ? 1 : 0); }, "delta", {}};
}

double trigamma_integer(int z) {
  double s = std::numbers::pi * std::numbers::pi / 6.0;
  for (int j = 1; j < z; ++j) s -= 1.0 / (static_cast<double>(j) * j);
  return s;
}

AsymptoticSeries trigamma_asymptotic(std::size_t len) {
  AsymptoticSeries a;
  for (std::size_t k = 0; k < len; ++k) a.coeffs.push_back((k % 2 == 0 ? 1 : -1) * bernoulli(k));
  a.description = "trigamma";
  return a;
}

}  // namespace

TEST_CASE("basic factorial series values") {
  // terms 1/((n+1)(n+2)): the 1/N tail is out of reach of the default tolerance
  const auto r = eval_factorial_series(factorials(), 2.0, kDefaultTolerance, 20000);
  CHECK_FALSE(r.converged);
  CHECK(std::abs(r.value - 1.0) <= r.error_estimate);
  CHECK(std::abs(r.value - 1.0) <= 1e-4);

  const auto b = eval_factorial_series(half_powers(), 1.0);
  CHECK(b.converged);
  CHECK(std::abs(b.value - std::log(2.0)) <= 1e-10);

  const auto t = eval_factorial_series(over_next(), 1.0, kDefaultTolerance, 20000);
  CHECK(std::abs(t.value - std::numbers::pi * std::numbers::pi / 6.0) <= 10 * t.error_estimate + 1e-9);
  CHECK(t.terms_used >= 1);
}

TEST_CASE("converged results honour the tolerance") {
  for (const double z : {1.5, 2.0, 4.0}) {
    for (const auto& fs : {factorials(), half_powers(), over_next()}) {
      const auto r = eval_factorial_series(fs, z, 1e-8, 20000);
      CHECK(r.error_estimate >= 0.0);
      if (r.converged) CHECK(r.error_estimate <= 1e-8 * std::max(1.0, std::abs(r.value)));
    }
  }
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(eval_factorial_series(factorials(), 0.0), DomainError);
  CHECK_THROWS_AS(eval_factorial_series(factorials(), -1.5), DomainError);
  CHECK_THROWS_AS(partial_sum_exact(factorials(), BigRational(-2), 3), PoleError);
  CHECK_THROWS_AS(partial_sum_exact(factorials(), BigRational(0), 0), PoleError);
  CHECK_NOTHROW(partial_sum_exact(factorials(), BigRational(-2), 1));
  CHECK_THROWS_AS(eval_asymptotic(trigamma_asymptotic(4), 0.0), DomainError);
  CHECK_THROWS_AS(raabe_diagnostic(kernel0(), 2.0, 10, 20), DegenerateError);
}

TEST_CASE("exact partial sums") {
  CHECK(partial_sum_exact(factorials(), BigRational(2), 2) == BigRational(3, 4));
  CHECK(partial_sum_exact(factorials(), BigRational(5), 0) == BigRational(1, 5));
  for (std::size_t n = 0; n < 6; ++n) CHECK(partial_sum_exact(kernel0(), BigRational(2), n) == BigRational(1, 2));
  // telescoping: sum_{n<=N} n!/(2)_(n+1) = 1 - 1/(N+2)
  CHECK(partial_sum_exact(factorials(), BigRational(2), 40) == BigRational(41, 42));
}

TEST_CASE("float partial sums track the exact ones") {
  const BigRational zq(5, 2);
  for (const auto& fs : {factorials(), factorial_harmonic(), half_powers()}) {
    for (std::size_t n : {0u, 1u, 10u, 100u, 1000u}) {
      const double exact = to_double(partial_sum_exact(fs, zq, n));
      const double approx = partial_sum_float(fs, 2.5, n);
      CHECK(std::abs(exact - approx) <= 1e3 * std::abs(exact) * std::numeric_limits<double>::epsilon());
    }
  }
}

TEST_CASE("Raabe diagnostic") {
  CHECK(raabe_diagnostic(factorials(), 3.0, 100, 2000) == doctest::Approx(3.0).epsilon(0.1 / 3.0));
  CHECK(std::abs(raabe_diagnostic(factorial_harmonic(), 3.0, 100, 2000) - 3.0) <= 0.2);
  CHECK(std::isinf(raabe_diagnostic(half_powers(), 2.0, 10, 200)));
}

TEST_CASE("tighter tolerance never does less work") {
  for (const double z : {4.0, 6.0}) {
    for (const auto& fs : {factorials(), half_powers(), over_next()}) {
      const double loose = 1e-6;
      const auto r1 = eval_factorial_series(fs, z, 1e-8);
      const auto r2 = eval_factorial_series(fs, z, loose);
      REQUIRE(r1.converged);
      CHECK(r1.terms_used >= r2.terms_used);
      CHECK(std::abs(r1.value - r2.value) <= 2 * loose * std::max(1.0, std::abs(r1.value)));
    }
  }
}

TEST_CASE("evaluation is reproducible") {
  const auto a = eval_factorial_series(factorial_harmonic(), 3.5, 1e-9);
  const auto b = eval_factorial_series(factorial_harmonic(), 3.5, 1e-9);
  CHECK(a.value == b.value);
  CHECK(a.terms_used == b.terms_used);
}

TEST_CASE("max_terms caps the run") {
  const auto r = eval_factorial_series(factorials(), 1.2, 1e-14, 50);
  CHECK_FALSE(r.converged);
  CHECK(r.terms_used <= 50);
}

TEST_CASE("sequential series restarts on backward access") {
  int starts = 0;
  auto fs = sequential_series("naturals", [&starts] {
    ++starts;
    return [n = 0]() mutable { return BigRational(n++); };
  });
  CHECK(fs.coeff(0) == 0);
  CHECK(fs.coeff(5) == 5);
  CHECK(fs.coeff(2) == 2);
  CHECK(fs.coeff(3) == 3);
}

TEST_CASE("optimal truncation of the trigamma expansion") {
  for (const int z : {5, 10, 20}) {
    const auto r = eval_asymptotic(trigamma_asymptotic(150), z);
    CHECK(r.converged);
    CHECK(std::abs(r.value - trigamma_integer(z)) <= r.error_estimate);
  }
  CHECK(trigamma_integer(10) == doctest::Approx(0.1051663357).epsilon(1e-9));
}

TEST_CASE("finite asymptotic list") {
  AsymptoticSeries one;
  one.coeffs = {BigRational(1)};
  one.finite = true;
  const auto r = eval_asymptotic(one, 4.0);
  CHECK(r.value == 0.25);
  CHECK(r.error_estimate == 0.0);
  CHECK(r.converged);
}

TEST_CASE("sum_terms stopping rule") {
  // zeros interleaved with nonzero terms must not stop the sum early
  int n = 0;
  const auto r = sum_terms(
      [&n] {
        const int i = n++;
        if (i == 0) return 1.0;
        return i % 2 == 1 ? 0.0 : std::pow(0.5, i);
      },
      1e-12, 1000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0 + 0.25 / (1 - 0.25)).epsilon(1e-12));
}
