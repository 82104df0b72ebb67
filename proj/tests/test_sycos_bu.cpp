#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "coverage.hpp"
#include "sycos/datagen.hpp"
#include "sycos/ksg_mi.hpp"
#include "sycos/sycos_bu.hpp"

using namespace sycos;
using sycos::testing::coverage_jaccard;
using sycos::testing::window_jaccard;

namespace {

TimeSeriesPair independent_pair(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(n), y(n);
  for (Index i = 0; i < n; ++i) {
    x[i] = g(rng);
    y[i] = g(rng);
  }
  return TimeSeriesPair(x, y);
}

SearchParams block_params(std::uint64_t seed = 42) {
  SearchParams p;
  p.delta_bu = 10;
  p.s_min = 30;
  p.s_max = 800;
  p.seed = seed;
  return p;
}

}  // namespace

TEST(Neighborhood, EightMovesInTheOpen) {
  const auto n = neighborhood({100, 200}, 10, 0, 1000, 30, 800, {});
  ASSERT_EQ(n.size(), 8u);
  EXPECT_TRUE(std::is_sorted(n.begin(), n.end()));
  for (const Window& w : n) {
    EXPECT_TRUE(w.start == 90 || w.start == 100 || w.start == 110);
    EXPECT_TRUE(w.end == 190 || w.end == 200 || w.end == 210);
    EXPECT_NE(w, (Window{100, 200}));
  }
}

TEST(Neighborhood, RespectsBoundsAndSizes) {
  const auto n = neighborhood({0, 30}, 10, 0, 40, 30, 40, {});
  EXPECT_EQ(n, (std::vector<Window>{{0, 40}, {10, 40}}));
  for (const Window& w : neighborhood({55, 95}, 10, 50, 100, 30, 50, {})) {
    EXPECT_GE(w.start, 50);
    EXPECT_LE(w.end, 100);
    EXPECT_GE(w.size(), 30);
    EXPECT_LE(w.size(), 50);
  }
}

TEST(Neighborhood, PrunedDirectionsDropOutwardMoves) {
  DirectionPruning pr;
  pr.pruned[static_cast<int>(Direction::Left)] = true;
  for (const Window& w : neighborhood({100, 200}, 10, 0, 1000, 30, 800, pr)) EXPECT_GE(w.start, 100);
  pr.pruned[static_cast<int>(Direction::Right)] = true;
  const auto n = neighborhood({100, 200}, 10, 0, 1000, 30, 800, pr);
  EXPECT_EQ(n.size(), 3u);
  for (const Window& w : n) EXPECT_LE(w.end, 200);
}

TEST(DirectionPruning, PEqualsOnePrunesAtOnce) {
  DirectionPruning pr;
  bu_record_verdict(Direction::Left, true, 1, pr);
  EXPECT_TRUE(pr.pruned[0]);
  EXPECT_FALSE(pr.pruned[1]);
}

TEST(DirectionPruning, CleanVerdictResetsStreak) {
  DirectionPruning pr;
  bu_record_verdict(Direction::Right, true, 3, pr);
  bu_record_verdict(Direction::Right, true, 3, pr);
  bu_record_verdict(Direction::Right, false, 3, pr);
  EXPECT_EQ(pr.streak[1], 0);
  bu_record_verdict(Direction::Right, true, 3, pr);
  bu_record_verdict(Direction::Right, true, 3, pr);
  EXPECT_FALSE(pr.pruned[1]);
  bu_record_verdict(Direction::Right, true, 3, pr);
  EXPECT_TRUE(pr.pruned[1]);
}

TEST(RunBu, ZeroIdleStopsAtFirstSetback) {
  const auto sc = generate_scenario(embedded_block(2));
  auto p = block_params();
  p.max_idle = 0;
  const auto r = run_bu(sc.pair, p);
  ASSERT_FALSE(r.stats.climbs.empty());
  for (const auto& c : r.stats.climbs) {
    if (c.capped || c.last_neighbor_scores.empty()) continue;
    const double best = *std::max_element(c.last_neighbor_scores.begin(), c.last_neighbor_scores.end());
    EXPECT_LE(best, c.final_score);
  }
  auto q = p;
  q.max_idle = 3;
  const auto longer = run_bu(sc.pair, q);
  std::uint64_t it0 = 0, it3 = 0;
  for (const auto& c : r.stats.climbs) it0 += c.iterations;
  for (const auto& c : longer.stats.climbs) it3 += c.iterations;
  EXPECT_LT(it0, it3);
}

TEST(RunBu, EmbeddedBlockFound) {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const auto sc = generate_scenario(embedded_block(seed));
    const auto r = run_bu(sc.pair, block_params(seed));
    ASSERT_FALSE(r.windows.empty()) << "seed " << seed;
    double best = 0.0;
    for (const auto& cw : r.windows) best = std::max(best, window_jaccard(cw.window, sc.truth[0]));
    EXPECT_GE(best, 0.6) << "seed " << seed;
  }
}

TEST(RunBu, IndependentPairFindsNothing) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto pair = independent_pair(3000, seed);
    SearchParams p;
    p.seed = seed;
    const auto r = run_bu(pair, p);
    EXPECT_TRUE(r.windows.empty());
    for (const auto& c : r.stats.climbs) {
      EXPECT_FALSE(c.accepted);
      EXPECT_LT(c.final_score, p.sigma);
    }
  }
}

TEST(RunBu, AcceptedWindowsPassFromScratch) {
  const auto sc = generate_scenario(moderate_scenario(4));
  auto p = block_params();
  const auto r = run_bu(sc.pair, p);
  ASSERT_FALSE(r.windows.empty());
  for (const auto& cw : r.windows) {
    const auto e = normalized_mi(sc.pair.x(cw.window), sc.pair.y(cw.window), p.k);
    EXPECT_GE(e.normalized, p.sigma);
    EXPECT_EQ(e.normalized, cw.normalized_mi);
    EXPECT_GE(cw.window.size(), p.s_min);
    EXPECT_LE(cw.window.size(), p.s_max);
    EXPECT_EQ(cw.method, Method::BU);
  }
  const auto& ws = r.windows.windows();
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j) EXPECT_FALSE(ws[i].window.overlaps(ws[j].window));
}

// At termination no neighbor beats both the current value and the best of the history.
TEST(RunBu, LocalOptimalityWitness) {
  const auto sc = generate_scenario(moderate_scenario(5));
  const auto r = run_bu(sc.pair, block_params());
  for (const auto& c : r.stats.climbs) {
    if (c.capped) continue;
    const double hmax = *std::max_element(c.history.begin(), c.history.end());
    for (double v : c.last_neighbor_scores) EXPECT_FALSE(v > c.final_score && v > hmax);
    EXPECT_EQ(c.history.size(), 5u);
  }
}

TEST(RunBu, SameSeedSameResult) {
  const auto sc = generate_scenario(moderate_scenario(6));
  const auto a = run_bu(sc.pair, block_params(11));
  const auto b = run_bu(sc.pair, block_params(11));
  EXPECT_EQ(a.windows, b.windows);
  EXPECT_EQ(a.stats.knn_searches, b.stats.knn_searches);
}

TEST(RunBu, ExplorationCoversEverySample) {
  const auto sc = generate_scenario(moderate_scenario(7));
  const auto r = run_bu(sc.pair, block_params());
  std::vector<bool> seen(sc.pair.size(), false);
  for (const Window& w : r.stats.explored)
    for (Index i = w.start; i < w.end; ++i) seen[i] = true;
  for (const auto& cw : r.windows)
    for (Index i = cw.window.start; i < cw.window.end; ++i) seen[i] = true;
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
}

TEST(RunBu, IncrementalMatchesScratch) {
  const auto sc = generate_scenario(embedded_block(8));
  for (bool pruning : {false, true}) {
    const auto inc = run_bu(sc.pair, block_params(), {pruning, true});
    const auto scr = run_bu(sc.pair, block_params(), {pruning, false});
    EXPECT_EQ(inc.windows, scr.windows);
    EXPECT_LT(inc.stats.knn_searches, scr.stats.knn_searches);
  }
}

TEST(RunBu, PruningAgreesWithUnprunedRun) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto sc = generate_scenario(embedded_block(seed));
    const auto pruned = run_bu(sc.pair, block_params(seed), {true, true});
    const auto plain = run_bu(sc.pair, block_params(seed), {false, true});
    EXPECT_GT(pruned.stats.prune_events, 0u);
    EXPECT_GE(coverage_jaccard(pruned.windows, plain.windows, sc.pair.size()), 0.8) << "seed " << seed;
  }
}
