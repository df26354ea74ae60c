#ifndef NMKDV_VALIDATE_HPP
#define NMKDV_VALIDATE_HPP

// The built-in invariant suite behind the `validate` subcommand. Every check
// is deterministic (fixed seeds, fixed parameters) so two runs produce
// byte-identical reports.

#include <string>
#include <vector>

namespace nmkdv {

struct ValidateCheck {
  std::string name;
  double violation = 0.0;  // worst observed violation
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;  // optional extra numbers, already formatted
};

struct ValidateReport {
  std::vector<ValidateCheck> checks;
  int failures = 0;
  std::vector<std::string> lines() const;  // deterministic text form
};

ValidateReport run_validation_suite();

}  // namespace nmkdv

#endif
