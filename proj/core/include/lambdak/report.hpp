#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lambdak {

enum class CheckStatus { pass, fail, skipped };

std::string to_string(CheckStatus s);

/// One named check: either passed, failed with a counterexample in detail,
/// or was skipped with the reason in detail.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

/// Outcome of a verification suite. Checks are kept sorted by name so the
/// report does not depend on execution order.
struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  void add(std::string name, bool passed, std::string detail = "");
  void add_skipped(std::string name, std::string reason);
  void sort_checks();

  bool all_passed() const;  // skipped checks do not fail a report
  size_t failed_count() const;

  /// One "PASS name" / "FAIL name: detail" / "SKIP name: reason" line per
  /// check, then a summary line.
  std::string to_text() const;
  std::string to_json() const;
};

}  // namespace lambdak
