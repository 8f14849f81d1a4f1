// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include "carnot/acceptance.hpp"

#include <cstdio>

int main() {
  const auto results = carnot::run_acceptance(CARNOT_DATA_DIR);
  int failures = 0;
  double total = 0;
  for (const auto& r : results) {
    std::printf("[%s] criterion %d: %s (%.2f s, limit %.0f s)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.time_limit_seconds);
    if (!r.detail.empty()) std::printf("       %s\n", r.detail.c_str());
    if (!r.pass) ++failures;
    total += r.seconds;
  }
  const bool within_budget = total < 300.0;
  std::printf("%d/%zu criteria passed, %.2f s total (budget 300 s: %s)\n",
              static_cast<int>(results.size()) - failures, results.size(), total,
              within_budget ? "ok" : "exceeded");
  return failures == 0 && within_budget ? 0 : 1;
}
