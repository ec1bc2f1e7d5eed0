#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace freecsk {

/// One invariant check: `deviation` is the worst violation found (0 for a
/// clean pass of a qualitative check), compared against `tolerance`.
struct Check {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;  ///< error text when the check could not be evaluated
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const noexcept;
};

/// series, prop2, theorem-boxtimes, free-poisson, marchenko-pastur,
/// conv-laws, limit-eta, limit-sigma, bp-identity.
const std::vector<std::string>& suite_names();

/// Runs one suite, or all of them for "all". std::invalid_argument for an
/// unknown name. Library errors inside a check fail that check only.
std::vector<SuiteReport> run_verification(std::string_view suite);

}  // namespace freecsk
