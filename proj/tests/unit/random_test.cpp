#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "rbftune/random.hpp"

using rbftune::Rng;

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform01(), b.uniform01());
}

TEST(Rng, UniformRanges) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform_left_open(0.0, 20.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 20.0);
  }
}

TEST(Rng, BelowCoversRangeRoughlyUniformly) {
  Rng rng(3);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) ++counts[rng.below(6)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(Rng, ShuffleIsPermutation) {
  Rng rng(11);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(std::span<int>(v));
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_FALSE(std::is_sorted(v.begin(), v.end()));
}

TEST(MixSeed, StreamsDiffer) {
  EXPECT_NE(rbftune::mix_seed(1, 0), rbftune::mix_seed(1, 1));
  EXPECT_NE(rbftune::mix_seed(1, 0), rbftune::mix_seed(2, 0));
  EXPECT_EQ(rbftune::mix_seed(5, 3), rbftune::mix_seed(5, 3));
}
