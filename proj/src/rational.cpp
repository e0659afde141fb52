#include "invfac/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "invfac/errors.hpp"

namespace invfac {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) {
    throw ParseError("not a rational number: '" + std::string(whole) + "'");
  }
  BigInt value(std::string(text), 10);
  return negative ? BigInt(-value) : value;
}

BigInt pow10(unsigned long exponent) {
  BigInt result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

BigRational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const BigInt e_value = parse_integer(text.substr(e + 1), whole);
    if (!e_value.fits_slong_p() || std::abs(e_value.get_si()) > 100000) {
      throw ParseError("exponent out of range: '" + std::string(whole) + "'");
    }
    exponent = e_value.get_si();
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw ParseError("not a rational number: '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(text)) throw ParseError("not a rational number: '" + std::string(whole) + "'");
    digits = std::string(text);
  }
  BigRational value{BigInt(digits, 10)};
  if (exponent > 0) value *= pow10(static_cast<unsigned long>(exponent));
  if (exponent < 0) value /= pow10(static_cast<unsigned long>(-exponent));
  value.canonicalize();
  return negative ? BigRational(-value) : value;
}

}  // namespace

BigRational make_rational(long num, long den) {
  BigRational value(num, den);
  value.canonicalize();
  return value;
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::string to_string(const BigRational& value) {
  if (value.get_den() == 1) return value.get_num().get_str(10);
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

BigRational parse_rational(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty()) throw ParseError("empty rational");
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(trim(body.substr(0, slash)), body);
    const BigInt den = parse_integer(trim(body.substr(slash + 1)), body);
    if (den == 0) throw ParseError("zero denominator: '" + std::string(body) + "'");
    BigRational value(num, den);
    value.canonicalize();
    return value;
  }
  if (body.find_first_of(".eE") != std::string_view::npos) return parse_decimal(body, body);
  return BigRational(parse_integer(body, body));
}

double to_double(const BigRational& value) { return ScaledDouble::from(value).value(); }

bool is_reduced(const BigRational& value) {
  if (value.get_den() <= 0) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return g == 1;
}

BigInt factorial(unsigned long n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

ScaledDouble ScaledDouble::from(const BigInt& value) {
  ScaledDouble out;
  if (value == 0) return out;
  long exp = 0;
  out.mantissa = mpz_get_d_2exp(&exp, value.get_mpz_t());
  out.exponent = exp;
  return out;
}

ScaledDouble ScaledDouble::ratio(const BigInt& num, const BigInt& den) {
  return from(num) / from(den);
}

ScaledDouble ScaledDouble::from(const BigRational& value) {
  return ratio(value.get_num(), value.get_den());
}

ScaledDouble ScaledDouble::from(double value) {
  ScaledDouble out;
  out.mantissa = value;
  out.normalize();
  return out;
}

ScaledDouble& ScaledDouble::operator*=(double factor) {
  mantissa *= factor;
  normalize();
  return *this;
}

ScaledDouble& ScaledDouble::operator/=(double divisor) {
  mantissa /= divisor;
  normalize();
  return *this;
}

ScaledDouble operator/(const ScaledDouble& lhs, const ScaledDouble& rhs) {
  ScaledDouble out;
  out.mantissa = lhs.mantissa / rhs.mantissa;
  out.exponent = lhs.exponent - rhs.exponent;
  out.normalize();
  return out;
}

double ScaledDouble::value() const {
  if (mantissa == 0.0) return 0.0;
  if (exponent > std::numeric_limits<int>::max()) return std::copysign(HUGE_VAL, mantissa);
  if (exponent < std::numeric_limits<int>::min()) return std::copysign(0.0, mantissa);
  return std::ldexp(mantissa, static_cast<int>(exponent));
}

void ScaledDouble::normalize() {
  if (mantissa == 0.0 || !std::isfinite(mantissa)) {
    if (mantissa == 0.0) exponent = 0;
    return;
  }
  int exp = 0;
  mantissa = std::frexp(mantissa, &exp);
  exponent += exp;
}

}  // namespace invfac
