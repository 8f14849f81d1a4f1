#ifndef CARNOT_ACCEPTANCE_HPP
#define CARNOT_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace carnot {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
  double time_limit_seconds;
};

/// Runs the full acceptance suite against the bundled group specs found in
/// groups_dir. Each entry reports pass/fail with the measured quantities.
std::vector<CriterionResult> run_acceptance(const std::string& groups_dir);

/// One criterion by id (1..9); useful for focused runs.
CriterionResult run_acceptance_criterion(const std::string& groups_dir, int id);

}  // namespace carnot

#endif  // CARNOT_ACCEPTANCE_HPP
