#include <cmath>
#include <memory>
#include <sstream>

#include "invfac/errors.hpp"
#include "invfac/exact_core.hpp"
#include "invfac/oracles.hpp"
#include "invfac/representations.hpp"
#include "stirling_ratio.hpp"

namespace invfac {

const BigRational& Params::at(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw DomainError("missing parameter " + name);
  return it->second;
}

std::size_t Params::natural(const std::string& name) const {
  const BigRational& v = at(name);
  if (v.get_den() != 1 || v < 0 || !v.get_num().fits_ulong_p()) {
    throw DomainError("parameter " + name + " must be a nonnegative integer, got " + to_string(v));
  }
  return v.get_num().get_ui();
}

namespace {

using Generator = std::function<BigRational()>;

ParamSpec integer_param(std::string name, std::string description) {
  return {std::move(name), true, std::nullopt, std::move(description)};
}

ParamSpec real_param(std::string name, std::string description) {
  return {std::move(name), false, std::nullopt, std::move(description)};
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

void require_z_above(double z, double bound, const std::string& text) {
  require(std::isfinite(z) && z > bound, "z must satisfy " + text + ", got z = " + std::to_string(z));
}

/// a_n = n! * g(n) built from running state; `step` turns the state at n into the coefficient.
template <class State, class Step>
FactorialSeries running_series(std::string description, Step step) {
  return sequential_series(std::move(description), [step]() -> Generator {
    auto state = std::make_shared<State>();
    return [state, step]() { return step(*state); };
  });
}

struct FactorialState {
  std::size_t n = 0;
  BigInt fact = 1;  // n!
  /// Moves to the next n; call after the coefficient for n is produced.
  void advance() {
    ++n;
    fact *= static_cast<unsigned long>(n);
  }
};

struct HarmonicState : FactorialState {
  BigRational h1 = 0;  // H_n
  BigRational h2 = 0;  // H_n^(2)
  void advance() {
    FactorialState::advance();
    h1 += BigRational(1, n);
    BigInt sq = BigInt(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n);
    h2 += BigRational(1, sq);
  }
};

using ScaledGenerator = std::function<ScaledDouble()>;

/// Float generator for a_n = n! * g(n), g advanced by `step(n)` which returns g(n).
template <class Step>
std::function<ScaledGenerator()> factorial_times(Step make_step) {
  return [make_step]() -> ScaledGenerator {
    auto fact = std::make_shared<std::pair<std::size_t, ScaledDouble>>(0, ScaledDouble::from(1.0));
    auto step = make_step();
    return [fact, step]() mutable {
      ScaledDouble value = fact->second;
      value *= step(fact->first);
      ++fact->first;
      fact->second *= static_cast<double>(fact->first);
      return value;
    };
  };
}

FactorialSeries stirling_column_series(std::size_t k) {
  FactorialSeries fs = sequential_series("[n, " + std::to_string(k) + "]", [k]() -> Generator {
    auto stream = std::make_shared<Stirling1ColumnStream>(k);
    return [stream, k]() {
      BigRational value(stream->at(k));
      stream->advance();
      return value;
    };
  });
  fs.scaled = factorial_times([k] {
    auto columns = std::make_shared<detail::StirlingRatioColumns>(k);
    return [columns, k](std::size_t) {
      const double r = columns->at(k);
      columns->advance();
      return r;
    };
  });
  return fs;
}

FactorialSeries cauchy_series(bool first_kind) {
  return sequential_series(first_kind ? "(-1)^n c_n" : "d_n", [first_kind]() -> Generator {
    auto rows = std::make_shared<Stirling1RowStream>();
    return [rows, first_kind]() {
      BigRational value = integrate_stirling_row(rows->row(), first_kind);
      if (first_kind && rows->index() % 2 == 1) value = -value;
      rows->advance();
      return value;
    };
  });
}

std::vector<Representation> build_catalog() {
  std::vector<Representation> out;

  {
    Representation r;
    r.name = "stirling_kernel";
    r.params = {integer_param("k", "column of the first-kind triangle")};
    r.summary = "z^-(k+1) = sum [n,k] / (z)_(n+1)";
    r.domain_text = "z > 0";
    r.series = [](const Params& p) { return stirling_column_series(p.natural("k")); };
    r.check_domain = [](const Params& p, double z) {
      (void)p.natural("k");
      require_z_above(z, 0.0, "z > 0");
    };
    r.closed_form = [](const Params& p, double z) { return std::pow(z, -static_cast<double>(p.natural("k") + 1)); };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "zeta";
    r.kind = RepresentationKind::DirectSum;
    r.needs_z = false;
    r.params = {integer_param("k", "order; the value is zeta(k+1)")};
    r.summary = "zeta(k+1) = sum_{n>=k} [n,k] / (n! n)";
    r.domain_text = "k >= 1";
    r.direct = [](const Params& p, double, double tol, std::size_t max_terms) {
      return zeta_via_stirling(p.natural("k"), tol, max_terms);
    };
    r.check_domain = [](const Params& p, double) { require(p.natural("k") >= 1, "zeta needs k >= 1"); };
    r.closed_form = [](const Params& p, double) {
      return oracles::zeta_direct(static_cast<int>(p.natural("k") + 1)).value;
    };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "hurwitz";
    r.kind = RepresentationKind::DirectSum;
    r.needs_z = false;
    r.params = {integer_param("k", "order; the value is zeta(k+1, a)"), real_param("a", "shift, a > 0")};
    r.summary = "zeta(k+1, a) = sum_{n>=k} [n,k] / (n a(a+1)...(a+n-1))";
    r.domain_text = "k >= 1, a > 0";
    r.direct = [](const Params& p, double, double tol, std::size_t max_terms) {
      return hurwitz_via_stirling(p.natural("k"), p.real("a"), tol, max_terms);
    };
    r.check_domain = [](const Params& p, double) {
      require(p.natural("k") >= 1, "hurwitz needs k >= 1");
      require(p.at("a") > 0, "hurwitz needs a > 0");
    };
    r.closed_form = [](const Params& p, double) {
      return oracles::hurwitz_direct(static_cast<int>(p.natural("k") + 1), p.real("a")).value;
    };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "reciprocal";
    r.summary = "1/(z-1) = sum n! / (z)_(n+1)";
    r.domain_text = "z > 1";
    r.series = [](const Params&) {
      FactorialSeries fs = running_series<FactorialState>("n!", [](FactorialState& s) {
        BigRational value(s.fact);
        s.advance();
        return value;
      });
      fs.scaled = factorial_times([] { return [](std::size_t) { return 1.0; }; });
      return fs;
    };
    r.check_domain = [](const Params&, double z) { require_z_above(z, 1.0, "z > 1"); };
    r.closed_form = [](const Params&, double z) { return 1.0 / (z - 1.0); };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "reciprocal_sq";
    r.summary = "1/(z-1)^2 = sum n! H_n / (z)_(n+1)";
    r.domain_text = "z > 1";
    r.series = [](const Params&) {
      FactorialSeries fs = running_series<HarmonicState>("n! H_n", [](HarmonicState& s) {
        BigRational value = s.fact * s.h1;
        value.canonicalize();
        s.advance();
        return value;
      });
      fs.scaled = factorial_times([] {
        return [h = 0.0](std::size_t n) mutable {
          if (n > 0) h += 1.0 / static_cast<double>(n);
          return h;
        };
      });
      return fs;
    };
    r.check_domain = [](const Params&, double z) { require_z_above(z, 1.0, "z > 1"); };
    r.closed_form = [](const Params&, double z) { return 1.0 / ((z - 1.0) * (z - 1.0)); };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "pochhammer_ratio";
    r.params = {real_param("w", "real shift")};
    r.summary = "1/(z-w) = sum w(w+1)...(w+n-1) / (z)_(n+1)";
    r.domain_text = "z > w and z > 0 (real w)";
    r.series = [](const Params& p) {
      const BigRational w = p.at("w");
      FactorialSeries fs = sequential_series("(w)_n", [w]() -> Generator {
        auto state = std::make_shared<std::pair<std::size_t, BigRational>>(0, BigRational(1));
        return [state, w]() {
          BigRational value = state->second;
          state->second *= w + static_cast<unsigned long>(state->first);
          state->second.canonicalize();
          ++state->first;
          return value;
        };
      });
      fs.scaled = [w = p.real("w")]() -> ScaledGenerator {
        return [w, n = std::size_t{0}, prod = ScaledDouble::from(1.0)]() mutable {
          const ScaledDouble value = prod;
          prod *= w + static_cast<double>(n++);
          return value;
        };
      };
      return fs;
    };
    r.check_domain = [](const Params& p, double z) {
      const double w = p.real("w");
      require_z_above(z, std::max(w, 0.0), "z > max(w, 0)");
    };
    r.closed_form = [](const Params& p, double z) { return 1.0 / (z - p.real("w")); };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "rational_p";
    r.params = {integer_param("p", "number of extra poles")};
    r.summary = "1/((z-1)...(z-p-1)) = sum n! C(n,p)/p! / (z)_(n+1)";
    r.domain_text = "z > p+1";
    r.series = [](const Params& params) {
      const std::size_t p = params.natural("p");
      const BigInt p_fact = factorial(p);
      FactorialSeries fs = running_series<FactorialState>("n! C(n,p) / p!", [p, p_fact](FactorialState& s) {
        BigRational value(s.fact * binomial(s.n, p), p_fact);
        value.canonicalize();
        s.advance();
        return value;
      });
      fs.scaled = [p]() -> ScaledGenerator {
        // a_p = 1, a_n / a_(n-1) = n^2 / (n-p).
        return [p, n = std::size_t{0}, value = ScaledDouble::from(1.0)]() mutable {
          if (n < p) {
            ++n;
            return ScaledDouble::from(0.0);
          }
          if (n > p) value *= static_cast<double>(n) * static_cast<double>(n) / static_cast<double>(n - p);
          ++n;
          return value;
        };
      };
      return fs;
    };
    r.check_domain = [](const Params& params, double z) {
      const std::size_t p = params.natural("p");
      require_z_above(z, static_cast<double>(p) + 1.0, "z > p+1");
    };
    r.closed_form = [](const Params& params, double z) {
      double den = 1.0;
      for (std::size_t j = 1; j <= params.natural("p") + 1; ++j) den *= z - static_cast<double>(j);
      return 1.0 / den;
    };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "trigamma_fac";
    r.summary = "psi'(z) = sum n!/(n+1) / (z)_(n+1)";
    r.domain_text = "z > 0";
    r.series = [](const Params&) {
      FactorialSeries fs = running_series<FactorialState>("n!/(n+1)", [](FactorialState& s) {
        BigRational value(s.fact, static_cast<unsigned long>(s.n + 1));
        value.canonicalize();
        s.advance();
        return value;
      });
      fs.scaled = factorial_times([] { return [](std::size_t n) { return 1.0 / static_cast<double>(n + 1); }; });
      return fs;
    };
    r.check_domain = [](const Params&, double z) { require_z_above(z, 0.0, "z > 0"); };
    r.closed_form = [](const Params&, double z) { return oracles::trigamma_direct(z).value; };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "nielsen_beta_fac";
    r.summary = "beta(z) = sum n!/2^(n+1) / (z)_(n+1)";
    r.domain_text = "z > 0";
    r.series = [](const Params&) {
      FactorialSeries fs = running_series<FactorialState>("n!/2^(n+1)", [](FactorialState& s) {
        BigInt power;
        mpz_ui_pow_ui(power.get_mpz_t(), 2, s.n + 1);
        BigRational value(s.fact, power);
        value.canonicalize();
        s.advance();
        return value;
      });
      fs.scaled = []() -> ScaledGenerator {
        return [n = std::size_t{0}, value = ScaledDouble::from(0.5)]() mutable {
          const ScaledDouble out = value;
          value *= static_cast<double>(++n) / 2.0;
          return out;
        };
      };
      return fs;
    };
    r.check_domain = [](const Params&, double z) { require_z_above(z, 0.0, "z > 0"); };
    r.closed_form = [](const Params&, double z) { return oracles::beta_direct(z).value; };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "incgamma";
    r.params = {real_param("x", "upper limit, x > 0")};
    r.summary = "gamma(z,x) x^-z e^x = sum x^n / (z)_(n+1)";
    r.domain_text = "z > 0, x > 0";
    r.series = [](const Params& p) {
      const BigRational x = p.at("x");
      FactorialSeries fs = sequential_series("x^n", [x]() -> Generator {
        auto power = std::make_shared<BigRational>(1);
        return [power, x]() {
          BigRational value = *power;
          *power *= x;
          return value;
        };
      });
      fs.scaled = [x = p.real("x")]() -> ScaledGenerator {
        return [x, power = ScaledDouble::from(1.0)]() mutable {
          const ScaledDouble out = power;
          power *= x;
          return out;
        };
      };
      return fs;
    };
    r.check_domain = [](const Params& p, double z) {
      require(p.at("x") > 0, "incgamma needs x > 0");
      require_z_above(z, 0.0, "z > 0");
    };
    r.closed_form = [](const Params& p, double z) {
      const double x = p.real("x");
      return oracles::gamma_lower_direct(z, x).value * std::exp(x - z * std::log(x));
    };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "log_shift_minus";
    r.summary = "-ln(1-1/z) = sum d_n / (z)_(n+1), d_n the Cauchy numbers of the second kind";
    r.domain_text = "z > 1";
    r.series = [](const Params&) { return cauchy_series(false); };
    r.check_domain = [](const Params&, double z) { require_z_above(z, 1.0, "z > 1"); };
    r.closed_form = [](const Params&, double z) { return -std::log1p(-1.0 / z); };
    r.term_budget = 1500;
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "log_shift_plus";
    r.summary = "ln(1+1/z) = sum (-1)^n c_n / (z)_(n+1), c_n the Cauchy numbers of the first kind";
    r.domain_text = "z > 0";
    r.series = [](const Params&) { return cauchy_series(true); };
    r.check_domain = [](const Params&, double z) { require_z_above(z, 0.0, "z > 0"); };
    r.closed_form = [](const Params&, double z) { return std::log1p(1.0 / z); };
    r.term_budget = 1500;
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "k2_series";
    r.summary = "(z+1)/(z-1)^3 = sum n! (H_n + H_n^2 - H_n^(2)) / (z)_(n+1)";
    r.domain_text = "z > 1";
    r.series = [](const Params&) {
      FactorialSeries fs = running_series<HarmonicState>("n! (H_n + H_n^2 - H_n^(2))", [](HarmonicState& s) {
        BigRational value = s.fact * (s.h1 + s.h1 * s.h1 - s.h2);
        value.canonicalize();
        s.advance();
        return value;
      });
      fs.scaled = factorial_times([] {
        return [h1 = 0.0, h2 = 0.0](std::size_t n) mutable {
          if (n > 0) {
            const double inv = 1.0 / static_cast<double>(n);
            h1 += inv;
            h2 += inv * inv;
          }
          return h1 + h1 * h1 - h2;
        };
      });
      return fs;
    };
    r.check_domain = [](const Params&, double z) { require_z_above(z, 1.0, "z > 1"); };
    r.closed_form = [](const Params&, double z) { return (z + 1.0) / std::pow(z - 1.0, 3.0); };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "euler_sum_rhs";
    r.kind = RepresentationKind::DirectSum;
    r.needs_z = false;
    r.params = {integer_param("k", "the sum is over H_p / p^(k+1)")};
    r.summary = "sum H_p / p^(k+1) = sum_{n>=k} [n,k] psi'(n) / n!";
    r.domain_text = "k >= 1";
    r.direct = [](const Params& p, double, double tol, std::size_t max_terms) {
      return euler_sum_rhs(p.natural("k"), tol, max_terms);
    };
    r.check_domain = [](const Params& p, double) { require(p.natural("k") >= 1, "euler_sum_rhs needs k >= 1"); };
    r.closed_form = [](const Params& p, double) { return euler_sum_lhs(p.natural("k")); };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "polylog";
    r.kind = RepresentationKind::DirectSum;
    r.needs_z = false;
    r.params = {integer_param("k", "order; the value is Li_(k+1)(x)"), real_param("x", "0 < |x| < 1")};
    r.summary = "Li_(k+1)(x) = sum_{n>=k} [n,k] f_n(x) / x^n";
    r.domain_text = "0 < |x| < 1";
    r.direct = [](const Params& p, double, double tol, std::size_t max_terms) {
      return polylog_via_stirling(p.natural("k"), p.real("x"), tol, max_terms);
    };
    r.check_domain = [](const Params& p, double) {
      (void)p.natural("k");
      const BigRational& x = p.at("x");
      require(x != 0 && abs(x) < 1, "polylog needs 0 < |x| < 1");
    };
    r.closed_form = [](const Params& p, double) {
      return oracles::polylog_direct(static_cast<int>(p.natural("k") + 1), p.real("x")).value;
    };
    out.push_back(std::move(r));
  }
  {
    Representation r;
    r.name = "log_gamma";
    r.kind = RepresentationKind::DirectSum;
    r.summary = "ln Gamma(z) = (z-1/2) ln z - z + ln sqrt(2 pi) + sum a_n / ((z+1)...(z+n))";
    r.domain_text = "z > 0";
    r.direct = [](const Params&, double z, double tol, std::size_t max_terms) {
      return binet_log_gamma(z, tol, max_terms);
    };
    r.check_domain = [](const Params&, double z) { require_z_above(z, 0.0, "z > 0"); };
    r.closed_form = [](const Params&, double z) { return std::lgamma(z); };
    r.term_budget = 1500;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

const std::vector<Representation>& catalog() {
  static const std::vector<Representation> entries = build_catalog();
  return entries;
}

const Representation* find_representation(std::string_view name) {
  for (const auto& rep : catalog()) {
    if (rep.name == name) return &rep;
  }
  return nullptr;
}

Params resolve_params(const Representation& rep, const Params& given) {
  for (const auto& [name, value] : given.values()) {
    bool known = false;
    for (const auto& spec : rep.params) known = known || spec.name == name;
    if (!known) throw DomainError(rep.name + " takes no parameter " + name);
  }
  Params out;
  for (const auto& spec : rep.params) {
    if (given.has(spec.name)) {
      out.set(spec.name, given.at(spec.name));
    } else if (spec.default_value) {
      out.set(spec.name, *spec.default_value);
    } else {
      throw DomainError(rep.name + " needs parameter " + spec.name);
    }
    if (spec.integer) (void)out.natural(spec.name);
  }
  return out;
}

EvalResult evaluate(const Representation& rep, const Params& params, double z, double tol, std::size_t max_terms) {
  const Params resolved = resolve_params(rep, params);
  rep.check_domain(resolved, z);
  if (rep.kind == RepresentationKind::DirectSum) return rep.direct(resolved, z, tol, max_terms);
  return eval_factorial_series(rep.series(resolved), z, tol, max_terms);
}

}  // namespace invfac
