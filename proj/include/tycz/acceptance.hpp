#pragma once

// Acceptance suite: every numbered criterion as a list of named numeric
// checks, each carrying the claimed value, the computed value and the
// tolerance used.

#include <memory>
#include <string>
#include <vector>

#include "tycz/calabi_ode.hpp"
#include "tycz/io.hpp"

namespace tycz {

struct Check {
  std::string claim;
  double target = 0;
  double computed = 0;
  double tolerance = 0;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string name;   // short role name, used for test registration
  std::string title;
  std::vector<Check> checks;
  std::string error;  // set if the criterion threw

  bool pass() const;
};

/// Shared inputs of the suite: the y0 = 0, n = 2 profile and an independently
/// configured reference solve of the same problem.
class AcceptanceContext {
 public:
  explicit AcceptanceContext(const SolverConfig& cfg = {}, double y0 = 0.0);
  /// Uses an existing profile; the reference is solved at the same y0.
  explicit AcceptanceContext(std::shared_ptr<const RadialProfile> profile);

  const RadialProfile& profile() const { return *profile_; }
  std::shared_ptr<const RadialProfile> profile_ptr() const { return profile_; }
  const RadialProfile& reference() const { return *reference_; }
  const SolverConfig& config() const { return cfg_; }

  static SolverConfig reference_config();

 private:
  SolverConfig cfg_;
  std::shared_ptr<const RadialProfile> profile_;
  std::shared_ptr<const RadialProfile> reference_;
};

int criterion_count();
std::string criterion_name(int id);

/// Runs one criterion (1-based); exceptions are caught into `error`.
CriterionResult run_criterion(int id, const AcceptanceContext& ctx);

/// All criteria, optionally on up to `threads` worker threads; results in id order.
std::vector<CriterionResult> run_all(const AcceptanceContext& ctx, int threads = 1);

json check_json(const Check& c);
json criterion_json(const CriterionResult& r);

/// One line per criterion: `PASS  <id> <name>: <title>` or `FAIL ...`.
std::string summary_line(const CriterionResult& r);

}  // namespace tycz
