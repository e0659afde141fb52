// Acceptance run: one PASS/FAIL line per numbered criterion.
//
// Every check of the verify suite belongs to the criterion named by its
// two-digit prefix; a criterion passes only if all of its entries pass.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "invfac/verify.hpp"

int main() {
  invfac::VerifyOptions options;
  options.parallel = false;
  const invfac::VerifyReport report = invfac::run_verify(options);

  struct Group {
    std::string check;
    std::vector<const invfac::VerifyEntry*> entries;
    std::size_t failed = 0;
  };
  std::map<std::string, Group> groups;
  for (const auto& name : invfac::verify_check_names()) groups[name.substr(0, 2)].check = name;
  for (const auto& e : report.entries) {
    Group& g = groups[e.name.substr(0, 2)];
    g.entries.push_back(&e);
    if (!e.pass) ++g.failed;
  }

  int failed_criteria = 0;
  for (const auto& [id, g] : groups) {
    const bool pass = !g.entries.empty() && g.failed == 0;
    if (!pass) ++failed_criteria;
    std::printf("%s criterion %s  %s  (%zu entries, %zu failed)\n", pass ? "PASS" : "FAIL", id.c_str(), g.check.c_str(),
                g.entries.size(), g.failed);
    for (const auto* e : g.entries) {
      if (e->pass) continue;
      std::printf("       %s  lhs=%.12g rhs=%.12g |diff|=%.3g %s %.3g\n", e->name.c_str(), e->lhs, e->rhs, e->abs_diff,
                  invfac::comparison_symbol(e->comparison), e->tolerance);
    }
  }
  std::printf("verify runtime %.2f s (target < 60 s)\n", report.seconds);
  std::printf("%zu criteria, %d failed\n", groups.size(), failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
