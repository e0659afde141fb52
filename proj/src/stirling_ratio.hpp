#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace invfac::detail {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// [n, k] / n! for k = 0..max_k, in double, advanced one row at a time:
/// r(n+1, k) = (n r(n, k) + r(n, k-1)) / (n+1).
class StirlingRatioColumns {
 public:
  explicit StirlingRatioColumns(std::size_t max_k) : cols_(max_k + 1, 0.0) { cols_[0] = 1.0; }

  std::size_t index() const { return n_; }
  double at(std::size_t k) const { return cols_[k]; }

  void advance() {
    const double n = static_cast<double>(n_);
    for (std::size_t k = cols_.size(); k-- > 1;) cols_[k] = (n * cols_[k] + cols_[k - 1]) / (n + 1.0);
    cols_[0] = 0.0;
    ++n_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> cols_;
};

}  // namespace invfac::detail
