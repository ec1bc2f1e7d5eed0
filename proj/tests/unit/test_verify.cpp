#include <gtest/gtest.h>

#include <algorithm>

#include "freecsk/verify.hpp"

namespace {

using namespace freecsk;

TEST(Verify, SuiteNames) {
  const std::vector<std::string>& names = suite_names();
  for (const char* expected : {"series", "prop2", "theorem-boxtimes", "free-poisson", "marchenko-pastur", "conv-laws",
                               "limit-eta", "limit-sigma", "bp-identity"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end()) << expected;
  }
}

TEST(Verify, EverySuitePasses) {
  const std::vector<SuiteReport> reports = run_verification("all");
  EXPECT_EQ(reports.size(), suite_names().size());
  for (const SuiteReport& report : reports) {
    EXPECT_FALSE(report.checks.empty()) << report.suite;
    for (const Check& check : report.checks) {
      EXPECT_TRUE(check.passed) << report.suite << ": " << check.name << " deviation " << check.deviation
                                << " tolerance " << check.tolerance << " " << check.note;
      EXPECT_LE(check.deviation, check.tolerance);
    }
    EXPECT_TRUE(report.passed());
  }
}

TEST(Verify, SingleSuiteAndUnknownName) {
  const std::vector<SuiteReport> prop2 = run_verification("prop2");
  ASSERT_EQ(prop2.size(), 1u);
  EXPECT_EQ(prop2.front().suite, "prop2");
  EXPECT_THROW(run_verification("nonsense"), std::invalid_argument);
}

TEST(Verify, ReportFailsWhenAnyCheckFails) {
  SuiteReport report{"manual", {{"ok", 0.0, 1.0, true, ""}, {"bad", 2.0, 1.0, false, ""}}};
  EXPECT_FALSE(report.passed());
  report.checks.pop_back();
  EXPECT_TRUE(report.passed());
}

}  // namespace
