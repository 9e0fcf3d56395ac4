#pragma once

#include <string>
#include <vector>

namespace utie {

struct SelftestOptions {
  // Divisor offset for the STD regression (1 = sample STD). Only tests that
  // confirm the regression catches a wrong divisor change this.
  int std_ddof = 1;
};

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestResult {
  std::vector<SelftestCheck> checks;
  bool all_passed() const;
  std::size_t failures() const;
  // One "PASS|FAIL name: detail" line per check.
  std::string to_text() const;
};

// Published-table metric regressions (+/- 0.01), orthonormal fusion closed
// forms, and k-fold/threshold search against a naive double-loop oracle on a
// fixed synthetic instance (seed 7, group0, IE).
SelftestResult run_selftest(const SelftestOptions& options = {});

}  // namespace utie
