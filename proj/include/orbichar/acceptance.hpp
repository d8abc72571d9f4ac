#pragma once

#include <string>
#include <vector>

namespace orbichar::accept {

struct CriterionResult {
  std::string id;
  std::string label;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the full acceptance battery (identity checks 1-14 plus the negative
// control) and returns one result per criterion.
std::vector<CriterionResult> run_acceptance();

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace orbichar::accept
