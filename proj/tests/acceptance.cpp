// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>

#include "tqft/verify.hpp"

int main() {
  using namespace tqft::verify;
  const auto& all = suites();
  int failed = 0;
  for (int i = 0; i < 9; ++i) {
    auto r = run_suite(all[i], Level::Full);
    if (!r.passed) ++failed;
    std::printf("%s criterion %d %-16s %7.2fs / %4.0fs  %6zu checks  %s%s\n", r.passed ? "PASS" : "FAIL",
                i + 1, r.name.c_str(), r.seconds, r.budget_seconds, r.checks, r.description.c_str(),
                r.detail.empty() ? "" : ("  [" + r.detail + "]").c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
