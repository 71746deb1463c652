#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repvar/localmodel.hpp"

namespace repvar {

// Property-based acceptance suite at desk scale (n <= 3, genus <= 3).
// Every tolerance is pinned here, in code.

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
};

/// Run criteria 1..13; optionally restrict to a single index (0 = all).
std::vector<CriterionResult> runAcceptanceSuite(const VerifyOptions& opts = {},
                                                int only = 0);

bool allPassed(const std::vector<CriterionResult>& results);

}  // namespace repvar
