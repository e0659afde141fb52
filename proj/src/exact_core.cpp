#include "invfac/exact_core.hpp"

#include <mutex>
#include <stdexcept>

namespace invfac {

StirlingTriangle::StirlingTriangle(StirlingKind kind) : kind_(kind) {
  rows_.push_back({BigInt(1)});
  built_.store(1, std::memory_order_release);
}

const std::vector<BigInt>& StirlingTriangle::ensure_row(std::size_t n) const {
  {
    std::shared_lock lock(mutex_);
    if (n < rows_.size()) return rows_[n];
  }
  std::unique_lock lock(mutex_);
  while (rows_.size() <= n) {
    const std::vector<BigInt>& prev = rows_.back();
    const std::size_t m = rows_.size() - 1;  // prev is row m
    std::vector<BigInt> next(m + 2);
    for (std::size_t k = 1; k <= m + 1; ++k) {
      const BigInt& same = k <= m ? prev[k] : BigInt(0);
      const unsigned long weight = kind_ == StirlingKind::FirstUnsigned ? m : k;
      next[k] = weight * same + prev[k - 1];
    }
    next[0] = 0;
    rows_.push_back(std::move(next));
    built_.store(rows_.size(), std::memory_order_release);
  }
  return rows_[n];
}

BigInt StirlingTriangle::entry(std::size_t n, std::size_t k) const {
  if (k > n) return 0;
  return ensure_row(n)[k];
}

std::vector<BigInt> StirlingTriangle::row(std::size_t n) const { return ensure_row(n); }

const StirlingTriangle& stirling1_table() {
  static const StirlingTriangle table(StirlingKind::FirstUnsigned);
  return table;
}

const StirlingTriangle& stirling2_table() {
  static const StirlingTriangle table(StirlingKind::Second);
  return table;
}

BigInt stirling1_unsigned(std::size_t n, std::size_t k) { return stirling1_table().entry(n, k); }

BigInt stirling1_signed(std::size_t n, std::size_t k) {
  BigInt value = stirling1_unsigned(n, k);
  if (k <= n && (n - k) % 2 == 1) value = -value;
  return value;
}

BigInt stirling2(std::size_t n, std::size_t k) { return stirling2_table().entry(n, k); }

BigRational harmonic(std::size_t n, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("harmonic: order must be 1 or 2");
  BigRational sum = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    BigInt den = j;
    if (order == 2) den *= j;
    sum += BigRational(1, den);
  }
  sum.canonicalize();
  return sum;
}

BigRational bernoulli(std::size_t n) {
  static std::mutex mutex;
  static std::vector<BigRational> cache{BigRational(1)};
  std::lock_guard lock(mutex);
  while (cache.size() <= n) {
    const std::size_t m = cache.size();
    BigRational acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j > 1 && j % 2 == 1) continue;  // odd Bernoulli numbers past B_1 vanish
      acc += binomial(m + 1, j) * cache[j];
    }
    BigRational value = -acc / BigRational(static_cast<unsigned long>(m + 1));
    value.canonicalize();
    cache.push_back(std::move(value));
  }
  return cache[n];
}

BigRational integrate_stirling_row(const std::vector<BigInt>& row, bool alternate) {
  const std::size_t n = row.size() - 1;
  BigInt lcm = 1;
  for (unsigned long j = 2; j <= n + 1; ++j) mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), j);
  BigInt numerator = 0;
  BigInt scale;
  for (std::size_t k = 0; k <= n; ++k) {
    if (row[k] == 0) continue;
    mpz_divexact_ui(scale.get_mpz_t(), lcm.get_mpz_t(), k + 1);
    if (alternate && (n - k) % 2 == 1) {
      numerator -= row[k] * scale;
    } else {
      numerator += row[k] * scale;
    }
  }
  BigRational value(numerator, lcm);
  value.canonicalize();
  return value;
}

BigRational cauchy_first(std::size_t n) {
  return integrate_stirling_row(stirling1_table().row(n), /*alternate=*/true);
}

BigRational cauchy_second(std::size_t n) {
  return integrate_stirling_row(stirling1_table().row(n), /*alternate=*/false);
}

BigRational euler_poly_at_zero(std::size_t n) {
  BigInt two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, n + 1);
  BigRational value = 2 * (1 - two_pow) * bernoulli(n + 1) / BigRational(static_cast<unsigned long>(n + 1));
  value.canonicalize();
  return value;
}

BigRational geometric_poly(std::size_t n, const BigRational& x) {
  const auto row = stirling2_table().row(n);
  BigRational sum = 0;
  BigRational power = 1;
  BigInt fact = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      power *= x;
      fact *= static_cast<unsigned long>(k);
    }
    sum += row[k] * fact * power;
  }
  sum.canonicalize();
  return sum;
}

BigRational exponential_poly(std::size_t n, const BigRational& x) {
  const auto row = stirling2_table().row(n);
  // Horner from the top coefficient.
  BigRational sum = 0;
  for (std::size_t k = n + 1; k-- > 0;) sum = sum * x + row[k];
  sum.canonicalize();
  return sum;
}

std::vector<BigInt> rising_factorial_coeffs(std::size_t n) {
  std::vector<BigInt> poly{BigInt(1)};
  for (std::size_t j = 0; j < n; ++j) {
    // multiply by (x + j)
    std::vector<BigInt> next(poly.size() + 1, BigInt(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] += poly[i] * static_cast<unsigned long>(j);
    }
    poly = std::move(next);
  }
  return poly;
}

Stirling1RowStream::Stirling1RowStream() : row_{BigInt(1)} {}

void Stirling1RowStream::advance() {
  std::vector<BigInt> next(n_ + 2);
  next[0] = 0;
  for (std::size_t k = 1; k <= n_ + 1; ++k) {
    next[k] = row_[k - 1];
    if (k <= n_) next[k] += static_cast<unsigned long>(n_) * row_[k];
  }
  row_ = std::move(next);
  ++n_;
}

Stirling1ColumnStream::Stirling1ColumnStream(std::size_t max_k) : cols_(max_k + 1, BigInt(0)) {
  cols_[0] = 1;
}

void Stirling1ColumnStream::advance() {
  // [n+1, k] = n [n, k] + [n, k-1], updated from high k down so [n, k-1] is still old.
  for (std::size_t k = cols_.size(); k-- > 1;) {
    cols_[k] = static_cast<unsigned long>(n_) * cols_[k] + cols_[k - 1];
  }
  cols_[0] = 0;
  ++n_;
}

}  // namespace invfac
