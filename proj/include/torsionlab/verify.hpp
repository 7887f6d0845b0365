#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace torsionlab {

struct CheckResult {
  std::string module;
  std::string name;
  std::string scope;  // e.g. "n=2" or "n=2 j=1", empty when global
  bool pass;
  std::string detail;  // worst residual / counterexample description
};

struct VerifyOptions {
  std::vector<int> n_values{1, 2, 3, -2, -3};
  std::uint64_t seed = 0;
  /// Mantissa width for the precision cross-check addendum; 53 skips it.
  int precision_bits = 53;
};

/// Runs every module invariant block for the configured parameters; the
/// returned rows are ordered deterministically (module, check, scope).
std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt);

/// True iff all rows pass.
bool all_passed(const std::vector<CheckResult>& rows);

/// Fixed-width matrix rendering of the results.
std::string render_check_table(const std::vector<CheckResult>& rows);

}  // namespace torsionlab
