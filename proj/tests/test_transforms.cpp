#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>

#include "invfac/errors.hpp"
#include "invfac/exact_core.hpp"
#include "invfac/transforms.hpp"

using namespace invfac;

namespace {

BigRational fact(std::size_t n) { return BigRational(factorial(n)); }

BigRational pow2(std::size_t n) {
  BigInt p = 1;
  p <<= static_cast<mp_bitcnt_t>(n);
  return BigRational(p);
}

RationalSequence build(std::size_t len, const std::function<BigRational(std::size_t)>& f) {
  RationalSequence s(len);
  for (std::size_t i = 0; i < len; ++i) s[i] = f(i);
  return s;
}

BigRational sign(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

RationalSequence random_sequence(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 97);
  RationalSequence s(len);
  for (auto& v : s) {
    v = BigRational(num(rng), den(rng));
    v.canonicalize();
  }
  return s;
}

}  // namespace

TEST_CASE("forward transform of constant, linear and quadratic sequences") {
  constexpr std::size_t len = 18;
  const auto ones = stirling_transform(build(len, [](std::size_t) { return BigRational(1); }));
  const auto lin = stirling_transform(build(len, [](std::size_t k) -> BigRational { return BigRational(k); }));
  const auto quad = stirling_transform(build(len, [](std::size_t k) -> BigRational { return BigRational(k * k); }));
  REQUIRE(ones.size() == len);
  for (std::size_t n = 0; n < len; ++n) {
    const BigRational h1 = harmonic(n, 1);
    CHECK(ones[n] == fact(n));
    CHECK(lin[n] == fact(n) * h1);
    CHECK(quad[n] == fact(n) * (h1 + h1 * h1 - harmonic(n, 2)));
  }
}

TEST_CASE("inverse transform examples") {
  constexpr std::size_t len = 16;
  const auto beta = inverse_stirling_transform(build(len, [](std::size_t n) -> BigRational { return fact(n) / pow2(n + 1); }));
  CHECK(beta[0] == BigRational(1, 2));
  CHECK(beta[1] == BigRational(1, 4));
  CHECK(beta[2] == 0);
  CHECK(beta[3] == BigRational(-1, 8));
  for (std::size_t n = 0; n < len; ++n) CHECK(beta[n] == sign(n) * euler_poly_at_zero(n) / 2);

  for (const BigRational x : {BigRational(1), BigRational(-2, 3), BigRational(5, 2)}) {
    const auto a = inverse_stirling_transform(build(len, [&x](std::size_t n) -> BigRational {
      BigRational p = 1;
      for (std::size_t i = 0; i < n; ++i) p *= x;
      return p;
    }));
    for (std::size_t n = 0; n < len; ++n) CHECK(a[n] == sign(n) * exponential_poly(n, -x));
  }

  // n!/(n+1) is the trigamma series; its inverse is the Bernoulli sequence with B_1 = +1/2.
  const auto bern = inverse_stirling_transform(build(len, [](std::size_t n) -> BigRational { return fact(n) / (n + 1); }));
  for (std::size_t n = 0; n < len; ++n) CHECK(bern[n] == sign(n) * bernoulli(n));
  CHECK(bern[1] == BigRational(1, 2));
}

TEST_CASE("power series to factorial series") {
  constexpr std::size_t len = 14;
  const auto inv_z = factorial_series_from_power(build(len, [](std::size_t k) -> BigRational { return BigRational(k == 0); }));
  for (std::size_t n = 0; n < len; ++n) CHECK(inv_z[n] == (n == 0 ? 1 : 0));

  const auto inv_z2 = factorial_series_from_power(build(len, [](std::size_t k) -> BigRational { return BigRational(k == 1); }));
  CHECK(inv_z2[0] == 0);
  for (std::size_t n = 1; n < len; ++n) CHECK(inv_z2[n] == fact(n - 1));

  const auto tri = factorial_series_from_power(build(len, [](std::size_t k) -> BigRational { return sign(k) * bernoulli(k); }));
  for (std::size_t n = 0; n < len; ++n) CHECK(tri[n] == fact(n) / (n + 1));
}

TEST_CASE("factorial series to asymptotic coefficients") {
  constexpr std::size_t len = 16;
  const auto beta = asymptotic_from_factorial(build(len, [](std::size_t n) -> BigRational { return fact(n) / pow2(n + 1); }));
  for (std::size_t k = 0; k < len; ++k) {
    const BigRational expected = sign(k) * (1 - pow2(k + 1)) * bernoulli(k + 1) / (k + 1);
    CHECK(beta[k] == expected);
  }
  const BigRational x(3, 7);
  const auto phi = asymptotic_from_factorial(build(len, [&x](std::size_t n) -> BigRational {
    BigRational p = 1;
    for (std::size_t i = 0; i < n; ++i) p *= x;
    return p;
  }));
  for (std::size_t k = 0; k < len; ++k) CHECK(phi[k] == sign(k) * exponential_poly(k, -x));
}

TEST_CASE("round trip on random rational sequences") {
  std::mt19937_64 rng(7);
  for (std::size_t len = 1; len <= 20; ++len) {
    const auto a = random_sequence(rng, len);
    CHECK(inverse_stirling_transform(stirling_transform(a)) == a);
    CHECK(stirling_transform(inverse_stirling_transform(a)) == a);
  }
}

TEST_CASE("the two triangular matrices are inverse to each other") {
  constexpr std::size_t dim = 20;
  for (std::size_t n = 0; n < dim; ++n) {
    for (std::size_t m = 0; m < dim; ++m) {
      BigInt left = 0;
      BigInt right = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        const BigInt s2_km = stirling2(k, m) * ((k + m) % 2 == 0 ? 1 : -1);
        const BigInt s2_nk = stirling2(n, k) * ((n + k) % 2 == 0 ? 1 : -1);
        left += stirling1_unsigned(n, k) * s2_km;
        right += s2_nk * stirling1_unsigned(k, m);
      }
      CHECK(left == (n == m ? 1 : 0));
      CHECK(right == (n == m ? 1 : 0));
    }
  }
}

TEST_CASE("signed form of the transform") {
  std::mt19937_64 rng(11);
  for (std::size_t len = 1; len <= 15; ++len) {
    const auto a = random_sequence(rng, len);
    RationalSequence flipped = a;
    for (std::size_t k = 0; k < len; ++k) flipped[k] *= sign(k);
    auto b = stirling_transform(flipped);
    for (std::size_t n = 0; n < len; ++n) b[n] *= sign(n);
    CHECK(b == signed_stirling_transform(a));
  }
}

TEST_CASE("sequence parsing") {
  const auto seq = parse_sequence("# header\n1\n\n  -3/6\n2/1\n");
  REQUIRE(seq.size() == 3);
  CHECK(seq[1] == BigRational(-1, 2));
  CHECK(parse_sequence("[\"1\", \"3/4\"]") == RationalSequence{BigRational(1), BigRational(3, 4)});

  try {
    parse_sequence("1\n2\nbogus\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_sequence("1\n1/0\n"), ParseError);
  CHECK_THROWS_AS(parse_sequence("# nothing\n"), ParseError);
  CHECK_THROWS_AS(parse_sequence("[1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_sequence("[\"1\""), ParseError);
  CHECK_THROWS_AS(read_sequence_file("/nonexistent/seq.txt"), ParseError);
}

TEST_CASE("sequence formatting") {
  const RationalSequence seq{BigRational(1), BigRational(-3, 4), BigRational(0)};
  CHECK(format_sequence_text(seq) == "1\n-3/4\n0\n");
  CHECK(format_sequence_csv(seq) == "index,value\n0,1\n1,-3/4\n2,0\n");
  const std::string json = format_sequence_json(seq);
  CHECK(json == "[\n  \"1\",\n  \"-3/4\",\n  \"0\"\n]\n");
  CHECK(parse_sequence(json) == seq);
  CHECK(parse_sequence(format_sequence_text(seq)) == seq);

  const std::string path = "invfac_test_sequence.txt";
  {
    std::ofstream out(path);
    out << format_sequence_text(seq);
  }
  CHECK(read_sequence_file(path) == seq);
  std::remove(path.c_str());
}
