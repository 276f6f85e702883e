// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// Optional arguments select criterion ids.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "gwidth/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int i = 1; i <= gw::kCriteria; ++i) ids.push_back(i);
  int failed = 0;
  for (int id : ids) {
    const auto t0 = std::chrono::steady_clock::now();
    const gw::CriterionResult r = gw::run_criterion(id);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%2d] %s (%zu checks, %.1fs)\n", r.passed() ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.report.links.size(), secs);
    if (!r.passed()) {
      ++failed;
      if (!r.error.empty()) std::printf("       error: %s\n", r.error.c_str());
      for (const auto& f : r.report.failures()) std::printf("       failed: %s\n", f.c_str());
    }
    for (const auto& n : r.report.notes) std::printf("       note: %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
  return failed ? 1 : 0;
}
