#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace invfac {

/// Arbitrary-precision integer.
using BigInt = mpz_class;

/// Exact rational over BigInt. GMP keeps every arithmetic result canonical
/// (denominator > 0, gcd(num, den) = 1).
using BigRational = mpq_class;

BigRational make_rational(long num, long den = 1);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const BigInt& value);
std::string to_string(const BigRational& value);

/// Parses "p", "p/q", or a finite decimal such as "-0.25" or "1e-3" into an
/// exact rational. Throws ParseError on malformed input or a zero denominator.
BigRational parse_rational(std::string_view text);

double to_double(const BigRational& value);

bool is_reduced(const BigRational& value);

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

/// Mantissa/exponent pair for magnitudes far outside binary64 range, e.g.
/// n! for n in the thousands. value = mantissa * 2^exponent.
struct ScaledDouble {
  double mantissa = 0.0;
  long exponent = 0;

  static ScaledDouble from(const BigInt& value);
  /// Ratio of two big integers without forming the reduced fraction.
  static ScaledDouble ratio(const BigInt& num, const BigInt& den);
  static ScaledDouble from(const BigRational& value);
  static ScaledDouble from(double value);

  ScaledDouble& operator*=(double factor);
  ScaledDouble& operator/=(double divisor);
  friend ScaledDouble operator/(const ScaledDouble& lhs, const ScaledDouble& rhs);

  /// Converts to binary64, flushing to 0 or +-inf outside the representable range.
  double value() const;
  bool is_zero() const { return mantissa == 0.0; }

 private:
  void normalize();
};

}  // namespace invfac
