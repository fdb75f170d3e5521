#include <gtest/gtest.h>

#include "adkit/density_report.hpp"
#include "adkit/error.hpp"
#include "adkit/parse.hpp"

using namespace adkit;

TEST(CheckpointSchedule, GeometricIsStrictlyIncreasing) {
  auto pts = CheckpointSchedule::geometric(1.1, 10).points(1000000);
  ASSERT_FALSE(pts.empty());
  EXPECT_EQ(pts.front(), 10u);
  for (std::size_t i = 1; i < pts.size(); ++i) ASSERT_LT(pts[i - 1], pts[i]);
  EXPECT_LE(pts.back(), 1000000u);
  // x_{i+1} = max(x_i + 1, floor(1.1 x_i)) from 10: 10, 11, 12, ...
  EXPECT_EQ(pts[1], 11u);
}

TEST(CheckpointSchedule, MandatoryPointsAreMerged) {
  auto pts = CheckpointSchedule::geometric(2, 2).with_mandatory({3, 5, 8, 99}).points(20);
  EXPECT_EQ(pts, (std::vector<std::uint64_t>{2, 3, 4, 5, 8, 16}));
}

TEST(CheckpointSchedule, RejectsBadRatio) {
  EXPECT_THROW(CheckpointSchedule::geometric(1.0, 10), PreconditionError);
  EXPECT_THROW(CheckpointSchedule::geometric(2, 0), PreconditionError);
}

TEST(DensityReport, EvensAreExactlyHalfAtEvenCheckpoints) {
  auto report = estimate_densities(parse_set_expr("evens"), CheckpointSchedule::geometric(2, 2),
                                   std::uint64_t{1} << 20);
  ASSERT_EQ(report.checkpoints.size(), 20u);
  for (const auto& cp : report.checkpoints) EXPECT_EQ(cp.ratio, 0.5) << cp.n;
  EXPECT_TRUE(report.certified);
  EXPECT_EQ(*report.exact_density, make_rational(1, 2));
}

TEST(DensityReport, SquaresTailIsSmall) {
  auto report =
      estimate_densities(IntSet::squares(), CheckpointSchedule::standard(), 1000000);
  EXPECT_LE(report.empirical_upper, 1e-2);
  EXPECT_FALSE(report.certified);
  EXPECT_FALSE(report.exact_density);
  for (const auto& cp : report.checkpoints) {
    std::uint64_t r = 0;
    while ((r + 1) * (r + 1) <= cp.n) ++r;
    ASSERT_EQ(cp.count, r);
  }
}

TEST(DensityReport, EvensUnionIntervalWithinDeviation) {
  auto set = parse_set_expr("union(evens,window(all,1,100))");
  auto report = estimate_densities(set, CheckpointSchedule::standard(), 1000000);
  ASSERT_EQ(*report.exact_density, make_rational(1, 2));
  for (const auto& cp : report.checkpoints) {
    // oracle count: all of [1,100], then evens
    const std::uint64_t expected = cp.n <= 100 ? cp.n : 100 + (cp.n / 2 - 50);
    ASSERT_EQ(cp.count, expected) << cp.n;
    ASSERT_LE(std::abs(cp.ratio - 0.5), 102.0 / static_cast<double>(cp.n));
    ASSERT_TRUE(cp.error_bound);
    ASSERT_LE(std::abs(cp.ratio - 0.5), *cp.error_bound);
  }
}

TEST(DensityReport, TailIsUpperHalfOfRange) {
  auto report = estimate_densities(parse_set_expr("odds"), CheckpointSchedule::geometric(2, 1), 1024);
  ASSERT_EQ(report.checkpoints.size(), 11u);  // 1, 2, 4, ..., 1024
  EXPECT_EQ(report.tail_start, 10u);
  EXPECT_LE(report.empirical_lower, report.empirical_upper);
}
