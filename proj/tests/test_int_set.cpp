#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "adkit/error.hpp"
#include "adkit/int_set.hpp"
#include "oracles.hpp"

using namespace adkit;

namespace {

IntSet evens() { return IntSet::periodic(UltimatelyPeriodicSet::from_words("", "01")); }

std::vector<std::uint64_t> drain(const IntSet& set, std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  auto cur = set.cursor();
  while (auto v = cur.next(limit)) out.push_back(*v);
  return out;
}

void expect_cursor_matches_membership(const IntSet& set, std::uint64_t limit) {
  std::vector<std::uint64_t> expected;
  for (std::uint64_t n = 1; n <= limit; ++n)
    if (set.contains(n)) expected.push_back(n);
  EXPECT_EQ(drain(set, limit), expected) << set.describe();
  for (std::uint64_t n : {std::uint64_t{1}, limit / 3, limit})
    EXPECT_EQ(set.count(n), static_cast<std::uint64_t>(
                                std::upper_bound(expected.begin(), expected.end(), n) -
                                expected.begin()));
}

}  // namespace

TEST(IntSet, CountExamples) {
  EXPECT_EQ(evens().count(10), 5u);
  EXPECT_EQ(IntSet::periodic(UltimatelyPeriodicSet::residue_class(1, 3)).count(10), 4u);
  EXPECT_EQ(IntSet::squares().count(100), 10u);
  EXPECT_EQ(IntSet::squares().count(99), 9u);
  EXPECT_EQ(IntSet::squares().count(std::uint64_t{1} << 62), std::uint64_t{1} << 31);
}

TEST(IntSet, PeriodicCarriesDensityAndModulus) {
  auto e = evens();
  ASSERT_TRUE(e.exact_density());
  EXPECT_EQ(*e.exact_density(), make_rational(1, 2));
  ASSERT_TRUE(e.modulus());
  EXPECT_TRUE(e.certified());
  EXPECT_EQ(e.modulus()->at(make_rational(1, 8)), 16u);
}

TEST(IntSet, GeneratorSetsHaveNoModulus) {
  auto sq = IntSet::squares();
  EXPECT_FALSE(sq.exact_density());
  EXPECT_FALSE(sq.modulus());
  EXPECT_FALSE(sq.certified());
  auto flagged = sq.with_heuristic_modulus(make_rational(0), [](const Rational&) { return 1u; });
  EXPECT_TRUE(flagged.modulus());
  EXPECT_FALSE(flagged.certified());
}

TEST(IntSet, WindowRestrict) {
  auto w = window_restrict(evens(), 3, 8);
  EXPECT_EQ(drain(w, 100), (std::vector<std::uint64_t>{4, 6, 8}));
  EXPECT_EQ(w.count(100), 3u);
  EXPECT_THROW(window_restrict(evens(), 5, 4), PreconditionError);
  EXPECT_THROW(window_restrict(evens(), 0, 4), PreconditionError);
}

TEST(IntSet, WindowOnGeneratorIsFiniteWithDensityZero) {
  auto w = window_restrict(IntSet::squares(), 1, 100);
  ASSERT_TRUE(w.exact_density());
  EXPECT_EQ(*w.exact_density(), 0);
  EXPECT_EQ(w.count(1000), 10u);
  // certified modulus: count(n)/n < eps from the modulus on
  const Rational eps = make_rational(1, 50);
  const std::uint64_t n0 = w.modulus()->at(eps);
  for (std::uint64_t n = n0; n < n0 + 1000; ++n)
    ASSERT_LT(static_cast<double>(w.count(n)) / static_cast<double>(n), to_double(eps));
}

TEST(IntSet, MixedBooleanFallsBackToLazyNodes) {
  auto u = set_union(evens(), IntSet::squares());
  EXPECT_FALSE(u.exact_density());
  std::uint64_t c = 0;
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    const auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    const bool expected = n % 2 == 0 || r * r == n;
    ASSERT_EQ(u.contains(n), expected);
    c += expected;
  }
  EXPECT_EQ(u.count(1000), c);
}

TEST(IntSet, SpliceSelectsSourcePerSegment) {
  auto odds = IntSet::periodic(UltimatelyPeriodicSet::from_words("", "10"));
  auto s = splice({{1, 10, evens()}, {11, 20, odds}}, "test", 20);
  EXPECT_EQ(drain(s, 20), (std::vector<std::uint64_t>{2, 4, 6, 8, 10, 11, 13, 15, 17, 19}));
  EXPECT_THROW(s.contains(21), PlanExhausted);
}

TEST(IntSetProperty, CursorAgreesWithMembership) {
  std::mt19937_64 rng(21);
  auto sq = IntSet::squares();
  expect_cursor_matches_membership(sq, 5000);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = IntSet::periodic(oracle::to_set(oracle::random_words(rng, 10, 10)));
    auto b = IntSet::periodic(oracle::to_set(oracle::random_words(rng, 10, 10)));
    expect_cursor_matches_membership(a, 3000);
    expect_cursor_matches_membership(set_union(a, sq), 3000);
    expect_cursor_matches_membership(set_intersect(b, sq), 3000);
    expect_cursor_matches_membership(set_difference(a, sq), 3000);
    expect_cursor_matches_membership(set_difference(sq, b), 3000);
    expect_cursor_matches_membership(window_restrict(set_union(a, sq), 17, 2100), 3000);
  }
}

TEST(IntSetProperty, SkipCountMatchesCount) {
  auto mixed = set_union(evens(), IntSet::squares());
  for (const IntSet& set : {evens(), IntSet::squares(), mixed}) {
    auto cur = set.cursor();
    std::uint64_t total = 0;
    for (std::uint64_t limit : {10u, 11u, 500u, 501u, 9999u}) {
      total += cur.skip_count(limit);
      EXPECT_EQ(total, set.count(limit)) << set.describe() << " " << limit;
    }
  }
}

TEST(IntSetProperty, CountIsMonotoneAndLipschitz) {
  auto mixed = set_difference(IntSet::periodic(UltimatelyPeriodicSet::all()), IntSet::squares());
  for (const IntSet& set : {mixed, IntSet::squares()}) {
    std::uint64_t prev = 0;
    for (std::uint64_t n = 1; n <= 5000; ++n) {
      const std::uint64_t c = set.count(n);
      ASSERT_GE(c, prev);
      ASSERT_LE(c - prev, 1u);
      prev = c;
    }
  }
}
