#pragma once

#include <atomic>
#include <cstddef>
#include <deque>
#include <shared_mutex>
#include <vector>

#include "invfac/rational.hpp"

namespace invfac {

enum class StirlingKind { FirstUnsigned, Second };

/// Memoized triangle of Stirling numbers. Row n holds entries k = 0..n.
///
/// Rows are built on demand under an exclusive lock and never modified once
/// published, so concurrent readers either see a complete row or wait for the
/// single thread that builds it.
class StirlingTriangle {
 public:
  explicit StirlingTriangle(StirlingKind kind);

  StirlingTriangle(const StirlingTriangle&) = delete;
  StirlingTriangle& operator=(const StirlingTriangle&) = delete;

  StirlingKind kind() const { return kind_; }

  /// Entry (n, k); zero for k > n.
  BigInt entry(std::size_t n, std::size_t k) const;
  std::vector<BigInt> row(std::size_t n) const;
  std::size_t rows_built() const { return built_.load(std::memory_order_acquire); }

 private:
  const std::vector<BigInt>& ensure_row(std::size_t n) const;

  StirlingKind kind_;
  mutable std::shared_mutex mutex_;
  mutable std::deque<std::vector<BigInt>> rows_;
  mutable std::atomic<std::size_t> built_{0};
};

/// Process-wide tables shared by the free functions below.
const StirlingTriangle& stirling1_table();
const StirlingTriangle& stirling2_table();

BigInt stirling1_unsigned(std::size_t n, std::size_t k);
/// s(n, k) = (-1)^(n-k) * stirling1_unsigned(n, k).
BigInt stirling1_signed(std::size_t n, std::size_t k);
BigInt stirling2(std::size_t n, std::size_t k);

/// H_n (order 1) or H_n^(2) (order 2). Both vanish at n = 0.
BigRational harmonic(std::size_t n, int order = 1);

/// B_n with B_1 = -1/2, from sum_{j=0}^{n} C(n+1, j) B_j = 0.
BigRational bernoulli(std::size_t n);

/// c_n = integral over [0,1] of x(x-1)...(x-n+1).
BigRational cauchy_first(std::size_t n);
/// d_n = integral over [0,1] of x(x+1)...(x+n-1).
BigRational cauchy_second(std::size_t n);

/// E_n(0) = 2(1 - 2^(n+1)) B_(n+1) / (n+1).
BigRational euler_poly_at_zero(std::size_t n);

/// omega_n(x) = sum_k S(n,k) k! x^k.
BigRational geometric_poly(std::size_t n, const BigRational& x);
/// phi_n(x) = sum_k S(n,k) x^k.
BigRational exponential_poly(std::size_t n, const BigRational& x);

/// Coefficients of x^0..x^n in x(x+1)...(x+n-1), by multiplying out the
/// product directly. Independent of the Stirling tables.
std::vector<BigInt> rising_factorial_coeffs(std::size_t n);

/// Walks rows of the unsigned first-kind triangle without retaining old rows.
/// Used where n runs into the thousands and caching every row would not fit.
class Stirling1RowStream {
 public:
  Stirling1RowStream();
  std::size_t index() const { return n_; }
  const std::vector<BigInt>& row() const { return row_; }
  void advance();

 private:
  std::size_t n_ = 0;
  std::vector<BigInt> row_;
};

/// Walks columns 0..max_k of the unsigned first-kind triangle row by row.
class Stirling1ColumnStream {
 public:
  explicit Stirling1ColumnStream(std::size_t max_k);
  std::size_t index() const { return n_; }
  /// [n, k] for the current row n; k <= max_k.
  const BigInt& at(std::size_t k) const { return cols_[k]; }
  void advance();

 private:
  std::size_t n_ = 0;
  std::vector<BigInt> cols_;
};

/// sum_k sign_k * row[k] / (k+1) with sign_k = +1 (rising factorial) or
/// (-1)^(n-k) (falling factorial). Summed over the common denominator
/// lcm(1..n+1) so only one reduction happens per row.
BigRational integrate_stirling_row(const std::vector<BigInt>& row, bool alternate);

}  // namespace invfac
