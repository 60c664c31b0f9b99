#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fsweep/error.hpp"
#include "fsweep/grouping.hpp"
#include "support/test_support.hpp"

namespace fsweep {
namespace {

using testing::brute_extrema;
using testing::make_samples;

std::vector<Sample> unit_spaced(std::initializer_list<double> values) {
  std::vector<Sample> s;
  double f = 1.0;
  for (double v : values) s.push_back({f++, v});
  return s;
}

TEST(DetectExtrema, MonotoneHasNone) {
  EXPECT_TRUE(detect_extrema(unit_spaced({1, 2, 3, 4, 5})).empty());
}

TEST(DetectExtrema, UniqueMinimum) {
  EXPECT_EQ(detect_extrema(unit_spaced({5, 4, 3, 2, 1, 2, 3, 4, 5})),
            (std::vector<std::size_t>{4}));
}

TEST(DetectExtrema, SampledSineMatchesBruteForce) {
  std::vector<Sample> s;
  std::vector<double> v;
  for (int k = 0; k < 9; ++k) {
    const double x = k / 8.0;
    v.push_back(std::sin(2.0 * std::numbers::pi * x));
    s.push_back({1.0 + x, v.back()});
  }
  const auto expected = brute_extrema(v);
  ASSERT_EQ(expected, (std::vector<std::size_t>{2, 6}));  // crest at x=1/4, trough at 3/4
  EXPECT_EQ(detect_extrema(s), expected);
}

TEST(DetectExtrema, PlateausAndShortInputs) {
  EXPECT_TRUE(detect_extrema(unit_spaced({1, 2, 2, 1})).empty());
  EXPECT_TRUE(detect_extrema(unit_spaced({1, 2})).empty());
  EXPECT_TRUE(detect_extrema(std::vector<Sample>{}).empty());
}

TEST(PartitionIntoGroups, ValleyExample) {
  const auto set = partition_into_groups(unit_spaced({5, 4, 3, 2, 1, 2, 3, 4, 5}));
  ASSERT_EQ(set.size(), 5u);
  const auto freqs = [&](std::size_t i) {
    std::vector<double> f;
    for (const auto& s : set[i].samples) f.push_back(s.freq);
    return f;
  };
  EXPECT_EQ(freqs(0), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(freqs(1), (std::vector<double>{4}));
  EXPECT_EQ(freqs(2), (std::vector<double>{5}));
  EXPECT_EQ(freqs(3), (std::vector<double>{6, 7, 8}));
  EXPECT_EQ(freqs(4), (std::vector<double>{9}));
  EXPECT_FALSE(set[0].single());
  EXPECT_TRUE(set[1].single() && !set[1].is_extreme);
  EXPECT_TRUE(set[2].single() && set[2].is_extreme);
  EXPECT_FALSE(set[3].single());
  EXPECT_TRUE(set[4].single() && !set[4].is_extreme);
  EXPECT_EQ(set.m_ns, 2u);
  EXPECT_EQ(set.m_s, 3u);
  EXPECT_EQ(set[0].dist_prev, 0.0);
  EXPECT_EQ(set[1].dist_prev, 1.0);
  EXPECT_EQ(set[4].dist_prev, 1.0);
}

TEST(PartitionIntoGroups, TwoMonotoneSamples) {
  const auto set = partition_into_groups(unit_spaced({1, 2}));
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set[0].kind, GroupKind::NonSingle);
  EXPECT_EQ(set.m_ns, 1u);
  EXPECT_EQ(set.m_s, 0u);
}

TEST(PartitionIntoGroups, RemainderOfTwoStaysNonSingle) {
  const auto set = partition_into_groups(unit_spaced({1, 2, 3, 4, 5}));
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set[0].samples.size(), 3u);
  EXPECT_EQ(set[1].samples.size(), 2u);
  EXPECT_EQ(set[1].kind, GroupKind::NonSingle);
}

// Mixed layout around a dip: non-single runs on either side of single groups.
TEST(PartitionIntoGroups, MixedLayoutAroundDip) {
  const auto set = partition_into_groups(unit_spaced({0.9, 0.8, 0.6, 0.1, 0.5, 0.7, 0.8}));
  EXPECT_GE(set.m_ns, 2u);
  EXPECT_GE(set.m_s, 1u);
  EXPECT_TRUE(std::any_of(set.groups.begin(), set.groups.end(),
                          [](const Group& g) { return g.is_extreme; }));
}

TEST(PartitionIntoGroups, RejectsBadInput) {
  EXPECT_THROW(partition_into_groups(make_samples({1.0, 1.0, 2.0}, {1, 2, 3})), InputError);
  EXPECT_THROW(partition_into_groups(make_samples({1.0, 3.0, 2.0}, {1, 2, 3})), InputError);
  EXPECT_THROW(partition_into_groups(make_samples({1.0}, {1})), InputError);
  EXPECT_THROW(partition_into_groups(make_samples({1.0, 2.0}, {1, NAN})), InputError);
}

TEST(WindowContains, InteriorGroupWithUnitGaps) {
  GroupSet set{FrequencyBand(0.5, 5.0), {}, 0, 0};
  set.groups.push_back({{{1.0, 1.0}}, GroupKind::Single, 0.0, false});
  set.groups.push_back({{{2.0, 1.0}, {3.0, 1.0}}, GroupKind::NonSingle, 1.0, false});
  set.groups.push_back({{{4.0, 1.0}}, GroupKind::Single, 1.0, false});
  EXPECT_TRUE(window_contains(set, 1, 1.5));
  EXPECT_TRUE(window_contains(set, 1, 3.5));
  EXPECT_FALSE(window_contains(set, 1, 1.4));
  EXPECT_FALSE(window_contains(set, 1, 3.6));
  EXPECT_TRUE(window_contains(set, 1, 2.0));
}

TEST(WindowContains, OuterWindowsReachBandEdges) {
  std::vector<Sample> s = make_samples({2.0, 3.0, 4.0, 5.0, 6.0}, {1, 2, 3, 4, 5});
  const auto set = partition_into_groups(s, FrequencyBand(1.0, 8.0));
  ASSERT_EQ(set.size(), 2u);
  EXPECT_TRUE(window_contains(set, 0, 1.0));
  EXPECT_TRUE(window_contains(set, 1, 8.0));
  EXPECT_TRUE(window_contains(set, 0, 2.0));
}

// Randomised structural properties of the grouper.
TEST(PartitionIntoGroups, RandomisedInvariants) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> count(2, 60);
  std::uniform_real_distribution<double> val(-1.0, 1.0), gap(0.01, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = count(rng);
    std::vector<Sample> s;
    double f = 1.0;
    std::vector<double> values;
    for (int i = 0; i < n; ++i) {
      // Occasional plateaus exercise the strict-extremum rule.
      const double v = (i > 0 && rng() % 7 == 0) ? values.back() : val(rng);
      values.push_back(v);
      s.push_back({f, v});
      f += gap(rng);
    }
    const auto set = partition_into_groups(s);

    std::vector<Sample> flat;
    std::size_t ns = 0, singles = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const Group& g = set[i];
      ASSERT_GE(g.samples.size(), 1u);
      ASSERT_LE(g.samples.size(), kMaxGroupSize);
      ASSERT_EQ(g.single(), g.samples.size() == 1);
      if (g.is_extreme) ASSERT_TRUE(g.single());
      if (i > 0) ASSERT_GT(g.dist_prev, 0.0);
      (g.single() ? singles : ns) += 1;
      flat.insert(flat.end(), g.samples.begin(), g.samples.end());
    }
    ASSERT_EQ(flat, s);
    ASSERT_EQ(set.m_ns, ns);
    ASSERT_EQ(set.m_s, singles);

    // Every brute-force extremum is an extreme single group.
    for (std::size_t e : brute_extrema(values)) {
      const auto it = std::find_if(set.groups.begin(), set.groups.end(), [&](const Group& g) {
        return g.samples.front().freq == s[e].freq;
      });
      ASSERT_NE(it, set.groups.end());
      ASSERT_TRUE(it->is_extreme);
    }

    // Left-priority scan over non-single windows is deterministic, and
    // consecutive non-single windows overlap at most at a shared endpoint.
    for (int q = 0; q < 20; ++q) {
      std::uniform_real_distribution<double> xq(s.front().freq, s.back().freq);
      const double x = xq(rng);
      std::vector<std::size_t> hits;
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (!set[i].single() && window_contains(set, i, x)) hits.push_back(i);
      }
      ASSERT_LE(hits.size(), 2u);
      if (hits.size() == 2) ASSERT_EQ(hits[1], hits[0] + 1);
    }
  }
}

}  // namespace
}  // namespace fsweep
