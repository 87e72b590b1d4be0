// Acceptance criteria runner: one PASS/FAIL line per criterion.
#include <cstdio>

#include "meridian/selfcheck.hpp"

int main() {
  int failed = 0;
  for (const auto& c : meridian::run_acceptance()) {
    std::printf("%s\n", meridian::format_criterion(c).c_str());
    failed += c.pass ? 0 : 1;
  }
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
