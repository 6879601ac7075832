#pragma once

#include "radhf/angular.hpp"

#include <functional>
#include <string>
#include <vector>

namespace radhf::validation {

enum class Level { quick, full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  Level level = Level::quick;
  // Coefficients used by every kernel built in the suite; nullptr selects
  // the shared table. The reference values are always computed independently.
  const angular::CoefficientTable *coefficients = nullptr;
  std::function<void(const CheckResult &)> on_result; // called after each check
};

// quick: coefficient, kernel, grid, operator and energy identities (under a
// minute). full: also the SCF scenarios (He, H-, Ne, F-, spinless UHF Z=3)
// with their theorem reports and probes.
std::vector<CheckResult> run_suite(const SuiteOptions &options);

} // namespace radhf::validation
