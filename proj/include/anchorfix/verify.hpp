#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace anchorfix {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Invariant suite over the operator catalog: closed-form agreement for the
// worked plane example, coefficient and residual-bound checks on every
// catalog run, the quadratic identity on random draws, the limit diagnostic,
// projection properties, nonexpansiveness sampling, summability verdicts,
// optimality of the sparse-recovery solution, and the rotation baseline.
VerifyReport run_verify_suite(std::uint64_t seed);

std::string verify_report_json(const VerifyReport& report);

}  // namespace anchorfix
