// Acceptance gate: run the twelve-criterion verification suite at the default
// configuration and print one PASS/FAIL line per criterion.  Exit code is
// nonzero when any criterion fails.

#include <cstdio>

#include "wavemem/verify.hpp"

int main() {
  wavemem::ModelParams params;
  const wavemem::VerifyReport rep = wavemem::verify_all(params, 20260823ULL);
  for (const wavemem::CriterionResult& c : rep.criteria) {
    std::printf("criterion %2d [%s]: %s\n", c.id,
                c.passed ? "PASS" : "FAIL", c.name.c_str());
  }
  std::printf("acceptance: %s\n", rep.all_passed ? "ALL PASS" : "FAILURES");
  return rep.all_passed ? 0 : 1;
}
