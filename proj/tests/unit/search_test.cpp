#include <gtest/gtest.h>

#include <cmath>

#include "seqlab/error.hpp"
#include "seqlab/search.hpp"

namespace seqlab {
namespace {

TEST(GoldenSection, Parabola) {
  const ScalarMinimum m =
      golden_section([](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, -1.0, 4.0, 1e-10);
  EXPECT_NEAR(m.argmin, 0.3, 1e-7);
  EXPECT_NEAR(m.value, 2.0, 1e-15);
}

TEST(GoldenSection, KinkedObjective) {
  const ScalarMinimum m =
      golden_section([](double x) { return std::abs(x - 1.7); }, 0.0, 5.0, 1e-12);
  EXPECT_NEAR(m.argmin, 1.7, 1e-11);
}

TEST(MinimizeLogScale, RelativeAccuracyAcrossScales) {
  for (double target : {1e-7, 3e-4, 0.2}) {
    const auto f = [target](double mu) {
      const double d = std::log(mu / target);
      return d * d;
    };
    const ScalarMinimum m = minimize_log_scale(f, 1e-9, 1.0);
    EXPECT_NEAR(m.argmin / target, 1.0, 2e-6) << target;
    EXPECT_EQ(m.scan.size(), 64u);
    EXPECT_EQ(m.scan.back().first, 1.0);
  }
}

TEST(MinimizeLogScale, UpperEndIsAllowed) {
  const ScalarMinimum m = minimize_log_scale([](double x) { return -x; }, 0.01, 1.0);
  EXPECT_NEAR(m.argmin, 1.0, 1e-6);
}

TEST(MinimizeLogScale, LowerEndIsABracketFailure) {
  try {
    minimize_log_scale([](double x) { return x; }, 0.01, 1.0, 8);
    FAIL() << "expected BracketFailure";
  } catch (const BracketFailure& e) {
    EXPECT_NE(std::string(e.what()).find("scanned grid"), std::string::npos);
  }
}

TEST(MinimizeLogScale, InvalidBracket) {
  const auto f = [](double x) { return x; };
  EXPECT_THROW(minimize_log_scale(f, 0.0, 1.0), InvalidConfig);
  EXPECT_THROW(minimize_log_scale(f, 1.0, 1.0), InvalidConfig);
  EXPECT_THROW(minimize_log_scale(f, 0.1, 1.0, 2), InvalidConfig);
}

}  // namespace
}  // namespace seqlab
