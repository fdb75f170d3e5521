#include <gtest/gtest.h>

#include <numeric>

#include "adkit/error.hpp"
#include "adkit/rational_transfer.hpp"

using namespace adkit;

namespace {

std::vector<InjectiveMap> builtin_maps() {
  return {InjectiveMap::identity(),
          InjectiveMap::dilate(2),
          InjectiveMap::dilate(3),
          InjectiveMap::interleave3(),
          InjectiveMap::block_permutation({16}),
          InjectiveMap::block_permutation({5, 9}),
          InjectiveMap::finite_permutation({4, 3, 2, 1, 6, 5}),
          compose(InjectiveMap::interleave3(), InjectiveMap::dilate(2))};
}

}  // namespace

TEST(ResidueClasses, Examples) {
  auto two = residue_classes(2);
  ASSERT_EQ(two.classes.size(), 2u);
  EXPECT_EQ(two.classes[0].density(), make_rational(1, 2));
  EXPECT_TRUE(two.classes[0].contains(1));
  EXPECT_TRUE(two.classes[1].contains(2));
  auto one = residue_classes(1);
  ASSERT_EQ(one.classes.size(), 1u);
  EXPECT_EQ(one.classes[0].density(), 1);
  EXPECT_THROW(residue_classes(0), PreconditionError);
  EXPECT_EQ(residue_union(4, 0).density(), 0);
  EXPECT_EQ(residue_union(4, 3).density(), make_rational(3, 4));
}

TEST(TransferCheck, DilateEvens) {
  auto report = transfer_check(InjectiveMap::dilate(2), 2, 1, 100000);
  EXPECT_EQ(report.expected, make_rational(1, 4));
  EXPECT_TRUE(report.pass);
  auto img = image_set(InjectiveMap::dilate(2), IntSet::periodic(residue_union(2, 1)));
  // residue_union(2,1) = odds; 2 * odds = 2 mod 4, still floor-expressible
  for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_EQ(img.count(n), (n + 2) / 4);
  auto evens4 = image_set(InjectiveMap::dilate(2), IntSet::periodic(UltimatelyPeriodicSet::residue_class(0, 2)));
  for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_EQ(evens4.count(n), n / 4);
}

TEST(TransferCheck, Identity) {
  for (std::uint64_t s = 1; s <= 6; ++s)
    for (std::uint64_t r = 1; r <= s; ++r) {
      auto report = transfer_check(InjectiveMap::identity(), s, r, 10000);
      EXPECT_EQ(report.expected, make_rational(r, s));
      EXPECT_TRUE(report.pass);
    }
}

TEST(TransferCheck, BlockPermutationWithinDisplacement) {
  auto report = transfer_check(InjectiveMap::block_permutation({16}), 4, 3, 1000000);
  EXPECT_TRUE(report.pass);
  EXPECT_TRUE(report.certified);
  EXPECT_LE(std::abs(report.estimate - 0.75), 64.0 / 1e6);
  EXPECT_LE(report.tolerance, 64.0 / 1e6);
}

TEST(TransferCheck, RejectsBadFractions) {
  EXPECT_THROW(transfer_check(InjectiveMap::identity(), 3, 4, 1000), PreconditionError);
  EXPECT_THROW(transfer_check(InjectiveMap::identity(), 0, 0, 1000), PreconditionError);
}

TEST(FHat, Endpoints) {
  for (const auto& f : builtin_maps()) {
    auto zero = fhat_estimate(f, 0, 1, 100000);
    EXPECT_EQ(zero.estimate, 0) << f.describe();
    auto one = fhat_estimate(f, 1, 1, 100000);
    EXPECT_NEAR(one.estimate, 1, one.error_bound + 1e-12) << f.describe();
  }
}

TEST(FHat, Interleave3SplitsHalves) {
  auto row = fhat_estimate(InjectiveMap::interleave3(), 1, 2, 1000000);
  EXPECT_NEAR(row.estimate, 1.0 / 3, 1e-5);
  EXPECT_EQ(row.verdict, Verdict::kNonIdentity);
  EXPECT_EQ(to_string(row.verdict), "NON-IDENTITY");
}

TEST(FHat, TableIsReducedSortedAndMonotone) {
  auto table = fhat_table(InjectiveMap::block_permutation({7}), 6, 100000);
  for (std::size_t i = 0; i < table.size(); ++i) {
    EXPECT_EQ(std::gcd(table[i].r, table[i].s), 1u);
    if (i > 0)
      EXPECT_LT(make_rational(table[i - 1].r, table[i - 1].s), make_rational(table[i].r, table[i].s));
    EXPECT_EQ(table[i].verdict, Verdict::kIdentity);
  }
  EXPECT_EQ(table.size(), 13u);  // |Farey sequence F_6|
  EXPECT_TRUE(fhat_monotone(table));
  auto bad = table;
  std::swap(bad[3].estimate, bad[9].estimate);
  EXPECT_FALSE(fhat_monotone(bad));
}

// sum_i f(A_i)(n) = f(N)(n), all s <= 12, n <= 10^4
TEST(TransferProperty, PartitionAdditivity) {
  for (const auto& f : builtin_maps()) {
    auto whole = image_set(f, IntSet::periodic(UltimatelyPeriodicSet::all()));
    std::vector<std::uint64_t> whole_counts(10001);
    for (std::uint64_t n = 1; n <= 10000; ++n) whole_counts[n] = whole.count(n);
    for (std::uint64_t s = 1; s <= 12; ++s) {
      auto parts = residue_classes(s);
      std::vector<std::uint64_t> sum(10001, 0);
      for (const auto& cls : parts.classes) {
        auto img = image_set(f, IntSet::periodic(cls));
        auto cur = img.cursor();
        std::uint64_t c = 0;
        for (std::uint64_t n = 1; n <= 10000; ++n) {
          c += cur.skip_count(n);
          sum[n] += c;
        }
      }
      for (std::uint64_t n = 1; n <= 10000; ++n)
        ASSERT_EQ(sum[n], whole_counts[n]) << f.describe() << " s=" << s << " n=" << n;
    }
  }
}

// |f(A)(n)/n - r/s| <= (displacement + s)/n for density-preserving maps
TEST(TransferProperty, DensityPreservingRate) {
  const std::vector<InjectiveMap> maps{InjectiveMap::identity(),
                                       InjectiveMap::finite_permutation({5, 4, 3, 2, 1, 7, 6}),
                                       InjectiveMap::block_permutation({16}),
                                       InjectiveMap::block_permutation({3, 11})};
  for (const auto& f : maps) {
    const double D = static_cast<double>(*f.displacement_bound());
    for (std::uint64_t s : {2u, 5u, 7u}) {
      for (std::uint64_t r = 1; r <= s; r += 2) {
        auto img = image_set(f, IntSet::periodic(residue_union(s, r)));
        auto cur = img.cursor();
        std::uint64_t c = 0;
        const double alpha = static_cast<double>(r) / static_cast<double>(s);
        for (std::uint64_t n = 1; n <= 1000000; ++n) {
          c += cur.skip_count(n);
          const double dn = static_cast<double>(n);
          ASSERT_LE(std::abs(static_cast<double>(c) / dn - alpha), (D + static_cast<double>(s)) / dn)
              << f.describe() << " " << r << "/" << s << " n=" << n;
        }
      }
    }
  }
}

TEST(TransferProperty, DilateScalesExactly) {
  for (std::uint64_t m = 1; m <= 6; ++m) {
    auto f = InjectiveMap::dilate(m);
    for (std::uint64_t s = 1; s <= 6; ++s) {
      for (std::uint64_t r = 1; r <= s; ++r) {
        auto img = image_set(f, IntSet::periodic(residue_union(s, r)));
        // brute force: multiples of m whose quotient is i mod s with 1 <= i <= r
        std::uint64_t c = 0;
        for (std::uint64_t n = 1; n <= 100000; ++n) {
          if (n % m == 0) {
            const std::uint64_t q = (n / m - 1) % s + 1;
            if (q <= r) ++c;
          }
          if (n % 1000 == 0) ASSERT_EQ(img.count(n), c) << m << " " << r << "/" << s;
        }
        const double expected = static_cast<double>(r) / static_cast<double>(s * m);
        EXPECT_LT(std::abs(static_cast<double>(c) / 1e5 - expected), 1e-4);
      }
    }
  }
}
