#include <gtest/gtest.h>

#include <set>

#include "sycos/datagen.hpp"
#include "sycos/selector.hpp"

using namespace sycos;

TEST(SamplePartitions, AllPartitionsWhenMEqualsBigM) {
  const auto a = sample_partitions(1000, 10, 10, 3, 30);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], (Window{100 * static_cast<Index>(i), 100 * static_cast<Index>(i + 1)}));
}

TEST(SamplePartitions, SinglePartitionIsAligned) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = sample_partitions(1000, 10, 1, seed, 30);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].size(), 100);
    EXPECT_EQ(a[0].start % 100, 0);
  }
}

TEST(SamplePartitions, SeededAndWithoutReplacement) {
  const auto a = sample_partitions(5003, 20, 6, 9, 30);
  EXPECT_EQ(a, sample_partitions(5003, 20, 6, 9, 30));
  std::set<Window> distinct(a.begin(), a.end());
  EXPECT_EQ(distinct.size(), 6u);
  for (const Window& w : a) EXPECT_EQ(w.size(), 250);
}

TEST(SamplePartitions, RejectsBadCounts) {
  EXPECT_THROW(sample_partitions(1000, 10, 0, 1, 30), ConfigError);
  EXPECT_THROW(sample_partitions(1000, 10, 11, 1, 30), ConfigError);
  EXPECT_THROW(sample_partitions(1000, 50, 5, 1, 30), ConfigError);
}

TEST(ClassifyWindows, CutIsInclusive) {
  EXPECT_EQ(classify_windows(std::vector<Window>{{0, 10}, {10, 30}, {30, 930}}, 0.5, 1000),
            (std::pair<Index, Index>{2, 1}));
  EXPECT_EQ(classify_windows(std::vector<Window>{}, 0.5, 1000), (std::pair<Index, Index>{0, 0}));
  EXPECT_EQ(classify_windows(std::vector<Window>{{0, 500}, {500, 1001}}, 0.5, 1000),
            (std::pair<Index, Index>{1, 1}));
  EXPECT_THROW(classify_windows(std::vector<Window>{}, 0.0, 1000), ConfigError);
}

TEST(ComputeScores, EqualRuntimesGiveEqualRuntimeTerms) {
  TrialStats s;
  s.avg_runtime_td = 0.3;
  s.avg_runtime_bu = 0.3;
  s.n_large_td = 1;
  s.n_small_bu = 1;
  const auto r = compute_scores(s, 0.5);
  EXPECT_DOUBLE_EQ(r.runtime_share_td, 0.5);
  EXPECT_DOUBLE_EQ(r.nscore_td, r.nscore_bu);
  EXPECT_DOUBLE_EQ(r.nscore_td, 0.5 * 2.0 + 0.5 * 0.5);
  EXPECT_EQ(r.chosen, Method::BU);
}

TEST(ComputeScores, WorkedArithmetic) {
  TrialStats s;
  s.avg_runtime_td = 1.0;
  s.avg_runtime_bu = 1.0;
  s.n_large_td = 6;
  s.n_small_bu = 4;
  const auto r = compute_scores(s, 0.5);
  EXPECT_DOUBLE_EQ(r.count_share_td, 0.6);
  EXPECT_DOUBLE_EQ(r.nscore_td, 1.3);
  EXPECT_DOUBLE_EQ(r.nscore_bu, 1.2);
  EXPECT_EQ(r.chosen, Method::TD);
}

TEST(ComputeScores, NoWindowsSplitsCountsEvenly) {
  TrialStats s;
  s.avg_runtime_td = 0.2;
  s.avg_runtime_bu = 0.4;
  const auto r = compute_scores(s, 0.5);
  EXPECT_TRUE(r.degenerate_counts);
  EXPECT_DOUBLE_EQ(r.count_share_td, 0.5);
  EXPECT_EQ(r.chosen, Method::TD);
}

TEST(ComputeScores, MissingRuntimeIsConfigError) {
  TrialStats s;
  s.avg_runtime_td = 0.0;
  s.avg_runtime_bu = 1.0;
  EXPECT_THROW(compute_scores(s, 0.5), ConfigError);
}

TEST(ComputeScores, FasterTdScoresHigher) {
  TrialStats s;
  s.avg_runtime_bu = 1.0;
  s.n_large_td = 2;
  s.n_small_bu = 3;
  double prev = 0.0;
  for (double t : {4.0, 2.0, 1.0, 0.5, 0.1}) {
    s.avg_runtime_td = t;
    const double score = compute_scores(s, 0.5).nscore_td;
    EXPECT_GT(score, prev);
    prev = score;
  }
}

TEST(ComputeScores, DominanceIsRobustToAlpha) {
  TrialStats td_wins;
  td_wins.avg_runtime_td = 0.1;
  td_wins.avg_runtime_bu = 0.5;
  td_wins.n_large_td = 5;
  td_wins.n_small_bu = 1;
  TrialStats bu_wins = td_wins;
  std::swap(bu_wins.avg_runtime_td, bu_wins.avg_runtime_bu);
  std::swap(bu_wins.n_large_td, bu_wins.n_small_bu);
  for (double a : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}) {
    EXPECT_EQ(compute_scores(td_wins, a).chosen, Method::TD) << a;
    EXPECT_EQ(compute_scores(bu_wins, a).chosen, Method::BU) << a;
  }
}

TEST(SelectMethod, ZeroPartitionsIsConfigError) {
  const auto sc = generate_scenario(dense_scenario(1));
  SearchParams p;
  p.m = 0;
  EXPECT_THROW(select_method(sc.pair, p), ConfigError);
}

TEST(SelectMethod, ReportsEverySampledPartition) {
  const auto sc = generate_scenario(dense_scenario(2));
  SearchParams p;
  const auto r = select_method(sc.pair, p);
  ASSERT_EQ(r.partitions.size(), 6u);
  for (const auto& t : r.partitions) {
    EXPECT_EQ(t.partition.size(), 200);
    EXPECT_EQ(t.s_max, 200);
    EXPECT_GT(t.runtime_td, 0.0);
    EXPECT_GT(t.runtime_bu, 0.0);
  }
  EXPECT_EQ(r.chosen, r.nscore_td > r.nscore_bu ? Method::TD : Method::BU);
}

TEST(SelectMethod, DenseFavorsTdSparseFavorsBu) {
  int td_dense = 0, bu_sparse = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SearchParams p;
    p.seed = seed;
    td_dense += select_method(generate_scenario(dense_scenario(seed)).pair, p).chosen == Method::TD;
    bu_sparse += select_method(generate_scenario(sparse_scenario(seed)).pair, p).chosen == Method::BU;
  }
  EXPECT_GE(td_dense, 4);
  EXPECT_GE(bu_sparse, 4);
}
