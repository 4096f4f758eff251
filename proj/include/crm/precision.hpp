#ifndef CRM_PRECISION_HPP
#define CRM_PRECISION_HPP

// Consistency suites run by `crm --precision-check`: double-precision results
// against identities, the other theta branch, an AGM oracle, and 100-digit
// evaluations of the same formulas.

#include <string>
#include <vector>

namespace crm {

struct PrecisionCase {
  std::string suite;
  std::string label;
  double value = 0;
  double reference = 0;
  double rel_error = 0;
  double tolerance = 0;
  bool pass = false;
};

std::vector<PrecisionCase> run_precision_checks();

}  // namespace crm

#endif  // CRM_PRECISION_HPP
