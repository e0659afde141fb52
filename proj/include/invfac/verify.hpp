#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace invfac {

enum class Comparison {
  /// |lhs - rhs| <= tolerance
  Within,
  /// |lhs - rhs| > tolerance
  Beyond,
  /// lhs <= rhs + tolerance (ratios, term counts, runtimes)
  AtMost,
};

struct VerifyEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::Within;
  bool pass = false;
};

struct VerifyReport {
  /// Sorted by name.
  std::vector<VerifyEntry> entries;
  bool overall_pass = true;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Substring matched against check names; empty runs everything.
  std::string filter;
  /// Multiplies every numeric Within tolerance. Exact checks (tolerance 0),
  /// runtime limits and Beyond thresholds are not scaled.
  double tol_scale = 1.0;
  bool parallel = true;
};

/// Names of all checks, e.g. "07_rational_closed_forms".
std::vector<std::string> verify_check_names();

VerifyReport run_verify(const VerifyOptions& options = {});

const char* comparison_symbol(Comparison c);

}  // namespace invfac
