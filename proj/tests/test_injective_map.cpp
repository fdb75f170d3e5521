#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "adkit/error.hpp"
#include "adkit/injective_map.hpp"
#include "adkit/parse.hpp"
#include "oracles.hpp"

using namespace adkit;

namespace {

std::vector<InjectiveMap> builtin_maps() {
  return {InjectiveMap::identity(),
          InjectiveMap::dilate(2),
          InjectiveMap::dilate(5),
          InjectiveMap::interleave3(),
          InjectiveMap::block_permutation({16}),
          InjectiveMap::block_permutation({3, 5, 2}),
          InjectiveMap::finite_permutation({3, 1, 2, 5, 4}),
          compose(InjectiveMap::dilate(2), InjectiveMap::interleave3()),
          compose(InjectiveMap::interleave3(), InjectiveMap::block_permutation({4, 7}))};
}

IntSet random_periodic(std::mt19937_64& rng) {
  return IntSet::periodic(oracle::to_set(oracle::random_words(rng, 8, 8)));
}

}  // namespace

TEST(InjectiveMap, ApplyExamples) {
  EXPECT_EQ(InjectiveMap::identity().apply(7), 7u);
  EXPECT_EQ(InjectiveMap::dilate(2).apply(5), 10u);
  auto f = InjectiveMap::interleave3();
  EXPECT_EQ(f.apply(1), 3u);
  EXPECT_EQ(f.apply(2), 1u);
  EXPECT_EQ(f.apply(6), 4u);
  for (std::uint64_t n = 1; n <= 5000; ++n) ASSERT_EQ(f.apply(n), oracle::interleave3(n));
}

TEST(InjectiveMap, BlockPermutationReversesBlocks) {
  auto f = InjectiveMap::block_permutation({2, 3});
  // blocks [1,2] [3,5] [6,7] [8,10] ...
  std::vector<std::uint64_t> got;
  for (std::uint64_t n = 1; n <= 10; ++n) got.push_back(f.apply(n));
  EXPECT_EQ(got, (std::vector<std::uint64_t>{2, 1, 5, 4, 3, 7, 6, 10, 9, 8}));
  EXPECT_TRUE(f.is_permutation());
  EXPECT_EQ(f.displacement_bound(), std::optional<std::uint64_t>(3));
}

TEST(InjectiveMap, FinitePermutationIsIdentityBeyondTable) {
  auto f = InjectiveMap::finite_permutation({2, 3, 1});
  EXPECT_EQ(f.apply(1), 2u);
  EXPECT_EQ(f.apply(3), 1u);
  EXPECT_EQ(f.apply(4), 4u);
  EXPECT_THROW(InjectiveMap::finite_permutation({1, 1}), PreconditionError);
  EXPECT_THROW(InjectiveMap::finite_permutation({1, 3}), PreconditionError);
}

TEST(InjectiveMap, PreimageBoundExamples) {
  EXPECT_EQ(InjectiveMap::dilate(2).preimage_bound(10), 5u);
  EXPECT_EQ(InjectiveMap::identity().preimage_bound(7), 7u);
  EXPECT_EQ(InjectiveMap::interleave3().preimage_bound(10), 14u);
  EXPECT_EQ(InjectiveMap::dilate(3).preimage_bound(2), 0u);
}

TEST(InjectiveMap, PreimageBoundAgreesWithScan) {
  for (const auto& f : builtin_maps()) {
    for (std::uint64_t L = 1; L <= 400; ++L) {
      const std::uint64_t b = f.preimage_bound(L);
      const std::uint64_t scanned = preimage_bound_by_scan(f, L, 20 * L + 100);
      if (f.family() == MapFamily::kComposed)
        ASSERT_GE(b, scanned) << f.describe() << " L=" << L;
      else
        ASSERT_EQ(b, scanned) << f.describe() << " L=" << L;
      // nothing beyond the bound lands in [1, L]
      for (std::uint64_t n = b + 1; n <= b + 50; ++n) ASSERT_GT(f.apply(n), L);
    }
  }
}

TEST(InjectiveMap, InverseIsExactOnImage) {
  for (const auto& f : builtin_maps()) {
    std::set<std::uint64_t> image;
    for (std::uint64_t n = 1; n <= 3000; ++n) {
      const std::uint64_t m = f.apply(n);
      image.insert(m);
      ASSERT_EQ(f.inverse(m), std::optional<std::uint64_t>(n)) << f.describe();
    }
    // values below the certified range are either in the image or have no preimage
    const std::uint64_t L = 500;
    ASSERT_LE(f.preimage_bound(L), 3000u);
    for (std::uint64_t m = 1; m <= L; ++m)
      ASSERT_EQ(f.inverse(m).has_value(), image.count(m) == 1) << f.describe() << " m=" << m;
  }
}

TEST(InjectiveMap, ImageSetExamples) {
  auto evens = parse_set_expr("evens");
  auto odds = parse_set_expr("odds");
  auto four = image_set(InjectiveMap::dilate(2), evens);
  EXPECT_EQ(four.count(100), 25u);
  EXPECT_EQ(*four.exact_density(), make_rational(1, 4));
  auto threes = image_set(InjectiveMap::interleave3(), odds);
  EXPECT_EQ(threes.count(30), 10u);
  EXPECT_EQ(*threes.exact_density(), make_rational(1, 3));
  auto sq = IntSet::squares();
  auto same = image_set(InjectiveMap::identity(), sq);
  for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_EQ(same.contains(n), sq.contains(n));
}

TEST(InjectiveMap, LambdaEstimate) {
  auto r = lambda_estimate(InjectiveMap::dilate(2), 10000);
  EXPECT_EQ(*r.exact_density, make_rational(1, 2));
  for (const auto& cp : r.checkpoints) ASSERT_EQ(cp.count, cp.n / 2);
  auto r3 = lambda_estimate(InjectiveMap::dilate(3), 100000);
  EXPECT_LE(std::abs(r3.checkpoints.back().ratio - 1.0 / 3), 1e-5);
  for (const auto& f : builtin_maps())
    if (f.is_permutation()) EXPECT_EQ(*f.image_density(), 1) << f.describe();
  EXPECT_EQ(*InjectiveMap::interleave3().image_density(), 1);
  EXPECT_EQ(*compose(InjectiveMap::dilate(2), InjectiveMap::dilate(3)).image_density(),
            make_rational(1, 6));
}

TEST(InjectiveMap, ComposeExamples) {
  auto f = InjectiveMap::interleave3();
  auto idf = compose(InjectiveMap::identity(), f);
  auto six = compose(InjectiveMap::dilate(2), InjectiveMap::dilate(3));
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    ASSERT_EQ(idf.apply(n), f.apply(n));
    ASSERT_EQ(six.apply(n), 6 * n);
  }
  // f composed with a scanned inverse table restricted to [1, 1000]
  std::vector<std::uint64_t> table(1000);
  std::vector<std::uint64_t> inv_of(1001, 0);
  for (std::uint64_t n = 1; n <= 3000; ++n)
    if (f.apply(n) <= 1000) inv_of[f.apply(n)] = n;
  for (std::uint64_t m = 1; m <= 1000; ++m) ASSERT_NE(inv_of[m], 0u);
  for (std::uint64_t m = 1; m <= 1000; ++m) ASSERT_EQ(f.apply(inv_of[m]), m);
}

TEST(InjectiveMap, VerifyInjectivePrefix) {
  EXPECT_TRUE(verify_injective_prefix(InjectiveMap::dilate(2), 10000).injective);
  EXPECT_TRUE(verify_injective_prefix(InjectiveMap::interleave3(), 100000).injective);
  auto broken = verify_injective_prefix([](std::uint64_t n) { return std::min<std::uint64_t>(n, 5); }, 100);
  EXPECT_FALSE(broken.injective);
  ASSERT_TRUE(broken.collision);
  EXPECT_EQ(*broken.collision, (std::pair<std::uint64_t, std::uint64_t>{5, 6}));
}

// f(A)(L) = |{a <= B(L) : a in A, f(a) <= L}|
TEST(InjectiveMapProperty, ImageCountingIdentity) {
  std::mt19937_64 rng(31);
  for (const auto& f : builtin_maps()) {
    for (int trial = 0; trial < 3; ++trial) {
      auto a = trial == 2 ? IntSet::squares() : random_periodic(rng);
      auto img = image_set(f, a);
      const std::uint64_t top = 10000;
      // brute force: tabulate f over a generous prefix
      std::vector<std::uint64_t> hits(top + 1, 0);
      const std::uint64_t scan = f.preimage_bound(top);
      for (std::uint64_t x = 1; x <= scan; ++x)
        if (a.contains(x) && f.apply(x) <= top) ++hits[f.apply(x)];
      std::uint64_t running = 0;
      for (std::uint64_t L = 1; L <= top; ++L) {
        running += hits[L];
        ASSERT_LE(hits[L], 1u);
        if (L % 97 == 0 || L < 200 || L == top) {
          ASSERT_EQ(img.count(L), running) << f.describe() << " " << a.describe() << " L=" << L;
          ASSERT_EQ(running, oracle::image_count([&](std::uint64_t x) { return f.apply(x); },
                                                 [&](std::uint64_t x) { return a.contains(x); }, L,
                                                 f.preimage_bound(L)));
        }
      }
    }
  }
}

// f(C) ∩ [1,L] = f(C ∩ [1,B(L)]) ∩ [1,L] on random C
TEST(InjectiveMapProperty, RestrictionIdentity) {
  std::mt19937_64 rng(32);
  auto maps = builtin_maps();
  std::uniform_int_distribution<std::size_t> pick(0, maps.size() - 1);
  std::uniform_int_distribution<std::uint64_t> L_dist(1, 1000);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& f = maps[pick(rng)];
    auto c = random_periodic(rng);
    const std::uint64_t L = L_dist(rng);
    const std::uint64_t B = f.preimage_bound(L);
    std::set<std::uint64_t> lhs, rhs;
    auto img = image_set(f, c);
    for (std::uint64_t m = 1; m <= L; ++m)
      if (img.contains(m)) lhs.insert(m);
    for (std::uint64_t x = 1; x <= B; ++x)
      if (c.contains(x) && f.apply(x) <= L) rhs.insert(f.apply(x));
    ASSERT_EQ(lhs, rhs) << f.describe() << " L=" << L;
  }
}

TEST(InjectiveMapProperty, PartitionTransport) {
  for (const auto& f : builtin_maps()) {
    for (std::uint64_t s : {2u, 3u, 5u}) {
      std::vector<IntSet> images;
      for (std::uint64_t i = 1; i <= s; ++i)
        images.push_back(image_set(f, IntSet::periodic(UltimatelyPeriodicSet::residue_class(i, s))));
      auto whole = image_set(f, IntSet::periodic(UltimatelyPeriodicSet::all()));
      for (std::uint64_t n = 1; n <= 10000; n += (n < 300 ? 1 : 37)) {
        std::uint64_t sum = 0;
        for (const auto& img : images) sum += img.count(n);
        ASSERT_EQ(sum, whole.count(n)) << f.describe() << " s=" << s << " n=" << n;
      }
    }
  }
}

TEST(InjectiveMapProperty, PermutationsCoverPrefixes) {
  for (const auto& f : builtin_maps()) {
    if (!f.is_permutation()) continue;
    auto whole = image_set(f, IntSet::periodic(UltimatelyPeriodicSet::all()));
    for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_EQ(whole.count(n), n) << f.describe();
  }
}

TEST(InjectiveMapProperty, PeriodicImageMatchesMembership) {
  std::mt19937_64 rng(33);
  for (const auto& f : builtin_maps()) {
    for (int trial = 0; trial < 10; ++trial) {
      auto w = oracle::random_words(rng, 8, 8);
      auto up = oracle::to_set(w);
      auto img = f.image_periodic(up);
      ASSERT_TRUE(img) << f.describe();
      for (std::uint64_t m = 1; m <= 5000; ++m) {
        const auto pre = f.inverse(m);
        ASSERT_EQ(img->contains(m), pre && oracle::member(w, *pre)) << f.describe() << " m=" << m;
      }
    }
  }
}

TEST(InjectiveMapProperty, ImageCursorAgreesWithMembership) {
  std::mt19937_64 rng(34);
  for (const auto& f : builtin_maps()) {
    for (const IntSet& a : {random_periodic(rng), IntSet::squares()}) {
      auto img = image_set(f, a);
      auto cur = img.cursor();
      std::vector<std::uint64_t> got, expected;
      while (auto v = cur.next(3000)) got.push_back(*v);
      for (std::uint64_t m = 1; m <= 3000; ++m)
        if (img.contains(m)) expected.push_back(m);
      ASSERT_EQ(got, expected) << f.describe() << " " << a.describe();
    }
  }
}
