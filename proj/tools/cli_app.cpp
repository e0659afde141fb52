#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "invfac/errors.hpp"
#include "invfac/exact_core.hpp"
#include "invfac/representations.hpp"
#include "invfac/transforms.hpp"
#include "invfac/verify.hpp"

namespace invfac::cli {

namespace {

using Json = nlohmann::ordered_json;

const char* const kParamNames[] = {"k", "a", "p", "w", "x", "m"};
const char* const kTableKinds[] = {"stirling1", "stirling2", "bernoulli", "cauchy1", "cauchy2", "euler0", "binet"};
constexpr std::size_t kMaxTableRows = 200;

/// Thrown for bad input that should end with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(15) << v;
  return s.str();
}

std::string boolean(bool v) { return v ? "true" : "false"; }

Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct CommonOptions {
  std::string format = "text";
};

void add_format(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--format", common.format, "text, json or csv")
      ->envname("INVFAC_FORMAT")
      ->check(CLI::IsMember({"text", "json", "csv"}));
}

// --- eval ------------------------------------------------------------------

struct EvalOptions {
  std::string name;
  std::vector<std::string> assignments;
  std::map<std::string, std::string> params;
  std::optional<std::string> z;
  double tol = kDefaultTolerance;
  std::size_t max_terms = kDefaultMaxTerms;
};

std::string valid_keys() {
  std::string out;
  for (const auto& rep : catalog()) out += (out.empty() ? "" : ", ") + rep.name;
  for (const auto& name : asymptotic_names()) out += ", " + name;
  return out;
}

void render_eval(std::ostream& out, const std::string& format, const std::string& name, const Params& params,
                 const EvalResult& r) {
  if (format == "json") {
    Json j;
    j["name"] = name;
    Json p = Json::object();
    for (const auto& [key, value] : params.values()) p[key] = to_string(value);
    j["params"] = p;
    j["value"] = json_number(r.value);
    j["terms_used"] = r.terms_used;
    j["error_estimate"] = json_number(r.error_estimate);
    j["converged"] = r.converged;
    out << dump(j);
  } else if (format == "csv") {
    std::string p;
    for (const auto& [key, value] : params.values()) p += (p.empty() ? "" : ";") + key + "=" + to_string(value);
    out << "name,params,value,terms_used,error_estimate,converged\n";
    out << csv_quote(name) << ',' << csv_quote(p) << ',' << number(r.value) << ',' << r.terms_used << ','
        << number(r.error_estimate) << ',' << boolean(r.converged) << '\n';
  } else {
    out << "name: " << name << '\n';
    for (const auto& [key, value] : params.values()) out << key << ": " << to_string(value) << '\n';
    out << "value: " << number(r.value) << '\n';
    out << "terms_used: " << r.terms_used << '\n';
    out << "error_estimate: " << number(r.error_estimate) << '\n';
    out << "converged: " << boolean(r.converged) << '\n';
  }
}

int cmd_eval(EvalOptions& o, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  for (const auto& assignment : o.assignments) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    if (key == "z") {
      o.z = value;
    } else {
      o.params[key] = value;
    }
  }

  Params params;
  for (const auto& [key, text] : o.params) params.set(key, parse_rational(text));
  std::optional<double> z;
  if (o.z) z = to_double(parse_rational(*o.z));

  if (const Representation* rep = find_representation(o.name)) {
    if (rep->needs_z && !z) throw UsageError(o.name + " needs --z");
    const Params resolved = resolve_params(*rep, params);
    const std::size_t max_terms = std::min(o.max_terms, rep->term_budget.value_or(o.max_terms));
    const EvalResult r = evaluate(*rep, resolved, z.value_or(0.0), o.tol, max_terms);
    render_eval(out, common.format, o.name, resolved, r);
    return kOk;
  }

  const auto names = asymptotic_names();
  if (std::find(names.begin(), names.end(), o.name) != names.end()) {
    if (!z) throw UsageError(o.name + " needs --z");
    for (const auto& [key, value] : params.values()) {
      if (key != "x" || o.name != "incgamma_asym") throw DomainError(o.name + " takes no parameter " + key);
    }
    const BigRational x = params.has("x") ? params.at("x") : BigRational(1);
    if (o.name == "incgamma_asym") params.set("x", x);
    const std::size_t length = std::min(o.max_terms, kAsymptoticCoefficientCap);
    const AsymptoticSeries series = *find_asymptotic(o.name, length, x);
    render_eval(out, common.format, o.name, params, eval_asymptotic(series, *z));
    return kOk;
  }

  err << "error: unknown key '" << o.name << "'; valid keys: " << valid_keys() << '\n';
  return kUnknownKey;
}

// --- verify ----------------------------------------------------------------

struct VerifyCliOptions {
  std::string filter;
  double tol_scale = 1.0;
  bool serial = false;
  std::vector<std::string> assignments;
};

int cmd_verify(VerifyCliOptions& o, const CommonOptions& common, std::ostream& out) {
  for (const auto& assignment : o.assignments) {
    const auto eq = assignment.find('=');
    const std::string key = eq == std::string::npos ? "" : assignment.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : assignment.substr(eq + 1);
    if (key == "filter") {
      o.filter = value;
    } else if (key == "tol_scale") {
      o.tol_scale = to_double(parse_rational(value));
    } else {
      throw UsageError("expected filter=... or tol_scale=..., got '" + assignment + "'");
    }
  }
  if (!(o.tol_scale > 0.0)) throw UsageError("tol_scale must be > 0");

  VerifyOptions options;
  options.filter = o.filter;
  options.tol_scale = o.tol_scale;
  options.parallel = !o.serial;
  if (!o.filter.empty()) {
    const auto names = verify_check_names();
    if (std::none_of(names.begin(), names.end(), [&](const std::string& n) { return n.find(o.filter) != std::string::npos; })) {
      throw UsageError("no check matches filter '" + o.filter + "'");
    }
  }
  const VerifyReport report = run_verify(options);

  if (common.format == "json") {
    Json entries = Json::array();
    for (const auto& e : report.entries) {
      Json j;
      j["name"] = e.name;
      j["lhs"] = json_number(e.lhs);
      j["rhs"] = json_number(e.rhs);
      j["abs_diff"] = json_number(e.abs_diff);
      j["tolerance"] = json_number(e.tolerance);
      j["comparison"] = comparison_symbol(e.comparison);
      j["pass"] = e.pass;
      entries.push_back(j);
    }
    Json j;
    j["entries"] = entries;
    j["overall_pass"] = report.overall_pass;
    out << dump(j);
  } else if (common.format == "csv") {
    out << "name,lhs,rhs,abs_diff,tolerance,comparison,pass\n";
    for (const auto& e : report.entries) {
      out << csv_quote(e.name) << ',' << number(e.lhs) << ',' << number(e.rhs) << ',' << number(e.abs_diff) << ','
          << number(e.tolerance) << ',' << comparison_symbol(e.comparison) << ',' << boolean(e.pass) << '\n';
    }
  } else {
    std::size_t failed = 0;
    for (const auto& e : report.entries) {
      failed += !e.pass;
      out << (e.pass ? "PASS " : "FAIL ") << e.name << "  lhs=" << number(e.lhs) << " rhs=" << number(e.rhs);
      if (e.comparison == Comparison::AtMost) {
        out << " (lhs<=rhs)\n";
      } else {
        out << " |diff|=" << number(e.abs_diff) << ' ' << comparison_symbol(e.comparison) << ' '
            << number(e.tolerance) << '\n';
      }
    }
    out << (report.overall_pass ? "overall: PASS" : "overall: FAIL") << " (" << report.entries.size()
        << " entries, " << failed << " failed)\n";
  }
  return report.overall_pass ? kOk : kVerifyFailed;
}

// --- table -----------------------------------------------------------------

struct TableOptions {
  std::string kind;
  long rows = 10;
  std::vector<std::string> assignments;
};

int cmd_table(TableOptions& o, const CommonOptions& common, std::ostream& out) {
  for (const auto& assignment : o.assignments) {
    if (assignment.rfind("rows=", 0) != 0) throw UsageError("expected rows=..., got '" + assignment + "'");
    const BigRational rows = parse_rational(assignment.substr(5));
    if (rows.get_den() != 1 || !rows.get_num().fits_slong_p()) throw UsageError("rows must be an integer");
    o.rows = rows.get_num().get_si();
  }
  if (o.rows < 1 || o.rows > static_cast<long>(kMaxTableRows)) {
    throw UsageError("--rows must be between 1 and " + std::to_string(kMaxTableRows));
  }
  const auto rows = static_cast<std::size_t>(o.rows);
  const bool triangle = o.kind == "stirling1" || o.kind == "stirling2";

  std::vector<std::vector<std::string>> data;
  for (std::size_t n = 0; n < rows; ++n) {
    std::vector<std::string> row;
    if (triangle) {
      for (std::size_t k = 0; k <= n; ++k) {
        row.push_back(to_string(o.kind == "stirling1" ? stirling1_unsigned(n, k) : stirling2(n, k)));
      }
    } else if (o.kind == "bernoulli") {
      row.push_back(to_string(bernoulli(n)));
    } else if (o.kind == "cauchy1") {
      row.push_back(to_string(cauchy_first(n)));
    } else if (o.kind == "cauchy2") {
      row.push_back(to_string(cauchy_second(n)));
    } else if (o.kind == "euler0") {
      row.push_back(to_string(euler_poly_at_zero(n)));
    } else {
      row.push_back(to_string(n == 0 ? BigRational(0) : binet_coefficient(n)));
    }
    data.push_back(std::move(row));
  }

  if (common.format == "json") {
    Json j;
    j["kind"] = o.kind;
    if (triangle) {
      j["rows"] = data;
    } else {
      Json values = Json::array();
      for (const auto& row : data) values.push_back(row.front());
      j["values"] = values;
    }
    out << dump(j);
  } else if (common.format == "csv") {
    out << (triangle ? "n,k,value\n" : "n,value\n");
    for (std::size_t n = 0; n < data.size(); ++n) {
      for (std::size_t k = 0; k < data[n].size(); ++k) {
        out << n << ',';
        if (triangle) out << k << ',';
        out << data[n][k] << '\n';
      }
    }
  } else {
    for (const auto& row : data) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << row[k];
      out << '\n';
    }
  }
  return kOk;
}

// --- transform -------------------------------------------------------------

struct TransformOptions {
  std::string input;
  std::string direction = "forward";
};

int cmd_transform(const TransformOptions& o, const CommonOptions& common, std::ostream& out) {
  const RationalSequence in = read_sequence_file(o.input);
  RationalSequence result;
  if (o.direction == "forward") {
    result = stirling_transform(in);
  } else if (o.direction == "inverse") {
    result = inverse_stirling_transform(in);
  } else {
    result = asymptotic_from_factorial(in);
  }
  if (common.format == "json") {
    out << format_sequence_json(result);
  } else if (common.format == "csv") {
    out << format_sequence_csv(result);
  } else {
    out << format_sequence_text(result);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse factorial series: evaluation, identity checks, tables and sequence transforms", "invfac"};
  app.require_subcommand(1);

  CommonOptions common;

  EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a catalog or asymptotic series");
  eval_cmd->add_option("name", eval.name, "catalog or asymptotic key")->required();
  eval_cmd->add_option("assignments", eval.assignments, "parameters as key=value (z=3, p=1, ...)");
  eval_cmd->add_option("--z", eval.z, "argument z");
  for (const char* name : kParamNames) {
    eval_cmd->add_option_function<std::string>(
        std::string("--") + name, [&eval, name](const std::string& v) { eval.params[name] = v; },
        std::string("parameter ") + name);
  }
  eval_cmd->add_option("--tol", eval.tol, "relative tolerance")->envname("INVFAC_TOL")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--max-terms", eval.max_terms, "term limit")
      ->envname("INVFAC_MAX_TERMS")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  add_format(eval_cmd, common);

  VerifyCliOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the identity checks");
  verify_cmd->add_option("assignments", verify.assignments, "filter=... or tol_scale=...");
  verify_cmd->add_option("--filter", verify.filter, "substring of check names")->envname("INVFAC_FILTER");
  verify_cmd->add_option("--tol-scale", verify.tol_scale, "multiplier for numeric tolerances")
      ->envname("INVFAC_TOL_SCALE");
  verify_cmd->add_flag("--serial", verify.serial, "run checks one at a time");
  add_format(verify_cmd, common);

  TableOptions table;
  CLI::App* table_cmd = app.add_subcommand("table", "Print exact number tables");
  table_cmd->add_option("kind", table.kind)->required()->check(CLI::IsMember(std::vector<std::string>(
      std::begin(kTableKinds), std::end(kTableKinds))));
  table_cmd->add_option("--rows", table.rows, "number of rows, 1..200")->envname("INVFAC_ROWS");
  table_cmd->add_option("assignments", table.assignments, "rows=...");
  add_format(table_cmd, common);

  TransformOptions transform;
  CLI::App* transform_cmd = app.add_subcommand("transform", "Transform a rational sequence file");
  transform_cmd->add_option("--in,input", transform.input, "sequence file")->required();
  transform_cmd->add_option("--direction", transform.direction, "forward, inverse or to_asymptotic")
      ->check(CLI::IsMember({"forward", "inverse", "to_asymptotic"}));
  add_format(transform_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval, common, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify, common, out);
    if (table_cmd->parsed()) return cmd_table(table, common, out);
    return cmd_transform(transform, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace invfac::cli
