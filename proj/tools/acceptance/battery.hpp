#pragma once

#include <string>
#include <vector>

namespace sturmbeta::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

// Runs the listed criteria (all of 1..9 when empty). A criterion passes only
// if its checks hold and it finishes inside its time limit.
std::vector<CriterionResult> run(const std::vector<int>& which = {});

// "criterion 3 PASS  round trip ... (12.1 s / 60 s)"
std::string format_line(const CriterionResult& r);

}  // namespace sturmbeta::acceptance
