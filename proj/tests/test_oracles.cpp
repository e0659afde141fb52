#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "invfac/errors.hpp"
#include "invfac/oracles.hpp"

using namespace invfac;
using namespace invfac::oracles;

namespace {

constexpr double pi = std::numbers::pi;
const double ln2 = std::log(2.0);

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("zeta") {
  CHECK(near(zeta_direct(2).value, pi * pi / 6, 1e-11));
  CHECK(near(zeta_direct(4).value, std::pow(pi, 4) / 90, 1e-11));
  CHECK(near(zeta_direct(3).value, 1.2020569032, 1e-10));
  CHECK(zeta_direct(2).terms_or_nodes > 0);
  CHECK_FALSE(zeta_direct(2).method.empty());
}

TEST_CASE("Hurwitz zeta") {
  CHECK(near(hurwitz_direct(2, 1.0).value, pi * pi / 6, 1e-11));
  CHECK(near(hurwitz_direct(2, 0.5).value, pi * pi / 2, 1e-11));
  CHECK(near(hurwitz_direct(3, 2.0).value, zeta_direct(3).value - 1.0, 1e-11));
}

TEST_CASE("polylogarithm") {
  CHECK(near(polylog_direct(1, 0.5).value, ln2, 1e-14));
  CHECK(near(polylog_direct(2, 0.5).value, 0.5822405265, 1e-10));
  CHECK(near(polylog_direct(2, 0.5).value, pi * pi / 12 - ln2 * ln2 / 2, 1e-13));
  CHECK(near(polylog_direct(1, -0.5).value, -std::log(1.5), 1e-14));
  CHECK_THROWS_AS(polylog_direct(2, -1.0), DomainError);
  CHECK_THROWS_AS(polylog_direct(2, 1.0), DomainError);
}

TEST_CASE("Nielsen beta") {
  CHECK(near(beta_direct(1.0).value, ln2, 1e-12));
  CHECK(near(beta_direct(0.5).value, pi / 2, 1e-12));
  CHECK(near(beta_direct(2.0).value, 1 - ln2, 1e-12));
  for (const double z : {0.5, 1.0, 2.0, 3.7}) CHECK(near(beta_direct(z).value + beta_direct(z + 1).value, 1 / z, 1e-10));
  CHECK_THROWS_AS(beta_direct(0.0), DomainError);
}

TEST_CASE("trigamma") {
  CHECK(near(trigamma_direct(1.0).value, pi * pi / 6, 1e-12));
  CHECK(near(trigamma_direct(2.0).value, pi * pi / 6 - 1, 1e-12));
  CHECK(near(trigamma_direct(10.0).value, 0.1051663357, 1e-10));
  for (const double z : {0.5, 1.0, 2.0, 3.7}) {
    CHECK(near(trigamma_direct(z).value - trigamma_direct(z + 1).value, 1 / (z * z), 1e-10));
  }
  CHECK_THROWS_AS(trigamma_direct(-1.0), DomainError);
}

TEST_CASE("lower incomplete gamma") {
  CHECK(near(gamma_lower_direct(1, 1).value, 1 - std::exp(-1.0), 1e-11));
  CHECK(near(gamma_lower_direct(2, 1).value, 1 - 2 * std::exp(-1.0), 1e-11));
  CHECK(near(gamma_lower_direct(3, 2).value, 2 - 10 * std::exp(-2.0), 1e-11));
  for (const double z : {1.0, 2.0, 3.0}) {
    for (const double x : {0.5, 1.0, 2.0}) {
      const auto r = gamma_lower_direct(z, x);
      REQUIRE(r.cross_check.has_value());
      CHECK(near(r.value, *r.cross_check, 1e-9));
    }
  }
  CHECK_THROWS_AS(gamma_lower_direct(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_lower_direct(1.0, 0.0), DomainError);
}

TEST_CASE("Euler sums") {
  CHECK(near(euler_sum_direct(1).value, 2 * zeta_direct(3).value, 1e-9));
  CHECK(near(euler_sum_direct(2).value, std::pow(pi, 4) / 72, 1e-9));
  CHECK(near(euler_sum_direct(3).value, 3 * zeta_direct(5).value - zeta_direct(2).value * zeta_direct(3).value, 1e-9));
}

TEST_CASE("alternating inverse factorial sums") {
  CHECK(near(alt_inverse_factorial_direct(0).value, -ln2, 1e-10));
  CHECK(near(alt_inverse_factorial_direct(1).value, 1 - 2 * ln2, 1e-10));
  CHECK(near(alt_inverse_factorial_direct(2).value, -0.1362943611, 1e-10));
}
