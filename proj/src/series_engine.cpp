#include "invfac/series_engine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "invfac/errors.hpp"
#include "stirling_ratio.hpp"

namespace invfac {

namespace {

using detail::CompensatedSum;

/// Terms a_n / (z(z+1)...(z+n)) with the denominator carried as a scaled
/// product, so neither a_n nor the product needs to fit in a double.
class FactorialTermStream {
 public:
  FactorialTermStream(const FactorialSeries& fs, double z) : fs_(fs), z_(z), den_(ScaledDouble::from(1.0)) {
    if (fs_.scaled) scaled_ = fs_.scaled();
  }

  ScaledDouble next() {
    den_ *= z_ + static_cast<double>(n_);
    const ScaledDouble a = scaled_ ? scaled_() : ScaledDouble::from(fs_.coeff(n_));
    ++n_;
    return a / den_;
  }

 private:
  const FactorialSeries& fs_;
  std::function<ScaledDouble()> scaled_;
  double z_;
  std::size_t n_ = 0;
  ScaledDouble den_;
};

void require_positive(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("argument z must be finite and > 0");
  }
}

struct SequentialState {
  std::mutex mutex;
  std::function<std::function<BigRational()>()> make_generator;
  std::function<BigRational()> generator;
  std::size_t next_index = 0;
  std::optional<BigRational> last;
};

}  // namespace

FactorialSeries sequential_series(std::string description,
                                  std::function<std::function<BigRational()>()> make_generator) {
  auto state = std::make_shared<SequentialState>();
  state->make_generator = std::move(make_generator);
  FactorialSeries fs;
  fs.description = std::move(description);
  fs.coeff = [state](std::size_t n) -> BigRational {
    std::lock_guard lock(state->mutex);
    if (state->last && state->next_index == n + 1) return *state->last;
    if (!state->generator || state->next_index > n) {
      state->generator = state->make_generator();
      state->next_index = 0;
    }
    while (state->next_index <= n) {
      state->last = state->generator();
      ++state->next_index;
    }
    return *state->last;
  };
  return fs;
}

EvalResult sum_terms(const std::function<double()>& next_term, double tol, std::size_t max_terms) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
  if (max_terms == 0) throw DomainError("max_terms must be >= 1");

  CompensatedSum sum;
  EvalResult result;
  double prev = 0.0;
  double last_nonzero = 0.0;
  std::size_t last_nonzero_n = 0;
  std::size_t small_run = 0;
  std::size_t zero_run = 0;
  bool bounded = false;
  double estimate = std::numeric_limits<double>::infinity();

  for (std::size_t n = 0; n < max_terms; ++n) {
    const double t = next_term();
    sum.add(t);
    const double s = sum.value();
    const double at = std::abs(t);

    if (at == 0.0) {
      ++zero_run;
      if (zero_run >= 3 && s != 0.0) {
        estimate = 0.0;
        bounded = true;
      }
    } else {
      zero_run = 0;
      if (last_nonzero != 0.0) {
        // zero coefficients in between: compare per nonzero step, Raabe per unit of n
        const double ap = std::abs(last_nonzero);
        const double gap = static_cast<double>(n - last_nonzero_n);
        const double ratio = at / ap;
        const double rho = static_cast<double>(last_nonzero_n) * (ap / at - 1.0) / gap;
        const double index = static_cast<double>(n);
        double candidate = -1.0;
        if (ratio < 0.9) candidate = std::max(candidate, at * ratio / (1.0 - ratio));
        if (rho > 1.05) candidate = std::max(candidate, at * index / (rho - 1.0));
        bounded = candidate >= 0.0;
        estimate = bounded ? candidate : at * index;
      } else {
        bounded = false;
        estimate = at * static_cast<double>(std::max<std::size_t>(n, 1));
      }
      last_nonzero = t;
      last_nonzero_n = n;
    }

    small_run = at <= tol * std::max(std::abs(s), 1e-300) ? small_run + 1 : 0;

    result.value = s;
    result.terms_used = n + 1;
    result.error_estimate = estimate;
    if (n >= 4 && small_run >= 3 && at <= std::abs(prev) && bounded &&
        estimate <= tol * std::max(1.0, std::abs(s))) {
      result.converged = true;
      return result;
    }
    prev = t;
  }
  result.converged = false;
  return result;
}

EvalResult eval_factorial_series(const FactorialSeries& fs, double z, double tol, std::size_t max_terms) {
  require_positive(z);
  FactorialTermStream stream(fs, z);
  return sum_terms([&stream] { return stream.next().value(); }, tol, max_terms);
}

double partial_sum_float(const FactorialSeries& fs, double z, std::size_t last_index) {
  require_positive(z);
  FactorialTermStream stream(fs, z);
  CompensatedSum sum;
  for (std::size_t n = 0; n <= last_index; ++n) sum.add(stream.next().value());
  return sum.value();
}

BigRational partial_sum_exact(const FactorialSeries& fs, const BigRational& z, std::size_t last_index) {
  BigRational sum = 0;
  BigRational den = 1;
  for (std::size_t n = 0; n <= last_index; ++n) {
    const BigRational factor = z + static_cast<unsigned long>(n);
    if (factor == 0) throw PoleError("z hits the pole at -" + std::to_string(n));
    den *= factor;
    sum += fs.coeff(n) / den;
  }
  sum.canonicalize();
  return sum;
}

double raabe_diagnostic(const FactorialSeries& fs, double z, std::size_t n_lo, std::size_t n_hi) {
  require_positive(z);
  if (n_lo < 1 || n_hi <= n_lo) throw DomainError("raabe_diagnostic needs 1 <= n_lo < n_hi");

  std::vector<ScaledDouble> terms;
  terms.reserve(n_hi + 2);
  FactorialTermStream stream(fs, z);
  for (std::size_t n = 0; n <= n_hi + 1; ++n) terms.push_back(stream.next());

  auto raabe_at = [&terms](std::size_t n) {
    if (terms[n].is_zero() || terms[n + 1].is_zero()) {
      throw DegenerateError("raabe_diagnostic: zero term at n = " + std::to_string(terms[n].is_zero() ? n : n + 1));
    }
    const double ratio = std::abs((terms[n] / terms[n + 1]).value());
    return static_cast<double>(n) * (ratio - 1.0);
  };
  for (std::size_t n = n_lo; n <= n_hi; ++n) (void)raabe_at(n);

  const std::size_t hi = n_hi;
  const std::size_t mid = std::max(n_lo, n_hi / 2);
  const std::size_t lo = std::max(n_lo, n_hi / 4);
  const double r_hi = raabe_at(hi);
  const double r_mid = raabe_at(mid);
  if (mid < hi && r_hi > 0.0 && r_mid > 0.0 && r_hi / r_mid > 1.5) {
    return std::numeric_limits<double>::infinity();
  }

  // Polynomial extrapolation in h = 1/n to h = 0 (Neville), through up to
  // three distinct sample points.
  std::vector<std::size_t> nodes{hi};
  if (mid < hi) nodes.push_back(mid);
  if (lo < mid) nodes.push_back(lo);
  std::vector<double> h;
  std::vector<double> p;
  for (std::size_t n : nodes) {
    h.push_back(1.0 / static_cast<double>(n));
    p.push_back(raabe_at(n));
  }
  for (std::size_t level = 1; level < p.size(); ++level) {
    for (std::size_t i = p.size() - 1; i >= level; --i) {
      p[i] = (h[i] * p[i - 1] - h[i - level] * p[i]) / (h[i] - h[i - level]);
    }
  }
  return p.back();
}

EvalResult eval_asymptotic(const AsymptoticSeries& series, double z) {
  require_positive(z);
  if (series.coeffs.empty()) throw DomainError("asymptotic series has no coefficients");

  std::vector<double> terms;
  terms.reserve(series.coeffs.size());
  ScaledDouble power = ScaledDouble::from(1.0);
  for (const auto& c : series.coeffs) {
    power *= z;
    terms.push_back((ScaledDouble::from(c) / power).value());
  }

  EvalResult result;
  CompensatedSum sum;
  if (series.finite) {
    for (double t : terms) sum.add(t);
    result.value = sum.value();
    result.terms_used = terms.size();
    result.error_estimate = 0.0;
    result.converged = true;
    return result;
  }

  std::optional<std::size_t> best;
  std::optional<std::size_t> last_nonzero;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (terms[k] == 0.0) continue;
    last_nonzero = k;
    if (!best || std::abs(terms[k]) < std::abs(terms[*best])) best = k;
  }
  if (!best) {
    result.value = 0.0;
    result.terms_used = terms.size();
    result.error_estimate = 0.0;
    result.converged = false;
    return result;
  }

  double magnitude = 0.0;
  for (std::size_t k = 0; k < *best; ++k) {
    sum.add(terms[k]);
    magnitude += std::abs(terms[k]);
  }
  const double rounding = 4.0 * static_cast<double>(*best + 1) * std::numeric_limits<double>::epsilon() * magnitude;
  result.value = sum.value();
  result.terms_used = std::max<std::size_t>(*best, 1);
  result.error_estimate = std::abs(terms[*best]) + rounding;
  result.converged = *best != *last_nonzero;
  return result;
}

}  // namespace invfac
