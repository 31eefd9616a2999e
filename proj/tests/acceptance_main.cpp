// Prints one PASS/FAIL line per acceptance criterion, followed by the
// individual checks of failing criteria. Exit status is nonzero if any
// selected criterion fails.
//
//   tycz_acceptance            all criteria
//   tycz_acceptance 4 9        selected criteria
//   tycz_acceptance --list     criterion numbers and names

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "tycz/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace tycz;
  std::vector<int> ids;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--list") {
      for (int k = 1; k <= criterion_count(); ++k) std::printf("%d %s\n", k, criterion_name(k).c_str());
      return 0;
    }
    if (a == "-v" || a == "--verbose") {
      verbose = true;
      continue;
    }
    ids.push_back(std::atoi(a.c_str()));
    if (ids.back() < 1 || ids.back() > criterion_count()) {
      std::fprintf(stderr, "unknown criterion '%s'\n", a.c_str());
      return 3;
    }
  }
  if (ids.empty())
    for (int k = 1; k <= criterion_count(); ++k) ids.push_back(k);

  const AcceptanceContext ctx;
  bool ok = true;
  for (int id : ids) {
    const auto r = run_criterion(id, ctx);
    std::printf("%s\n", summary_line(r).c_str());
    ok = ok && r.pass();
    for (const auto& c : r.checks)
      if (verbose || !r.pass())
        std::printf("    %s %s: target %.17g, computed %.17g, tolerance %.3g (%s)\n", c.pass ? "ok  " : "FAIL",
                    c.claim.c_str(), c.target, c.computed, c.tolerance, c.detail.c_str());
  }
  return ok ? 0 : 1;
}
