#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sycos/core_types.hpp"
#include "sycos/search_common.hpp"

namespace sycos {

struct TrialStats {
  double avg_runtime_td = 0.0;
  double avg_runtime_bu = 0.0;
  Index n_large_td = 0;
  Index n_small_bu = 0;
  Index n_small_td = 0;
  Index n_large_bu = 0;
};

struct PartitionTrial {
  Window partition;
  Index s_max = 0;
  double runtime_td = 0.0;
  double runtime_bu = 0.0;
  Index n_small_td = 0;
  Index n_large_td = 0;
  Index n_small_bu = 0;
  Index n_large_bu = 0;
};

struct SelectionReport {
  double nscore_td = 0.0;
  double nscore_bu = 0.0;
  double runtime_share_td = 0.5;  // normalized runtime of TD
  double count_share_td = 0.5;    // normalized large-window count of TD
  bool degenerate_counts = false;
  Method chosen = Method::BU;
  double alpha = 0.5;
  double rho = 0.5;
  TrialStats stats;
  std::vector<PartitionTrial> partitions;
};

// M equal partitions of length floor(n/M); m of them drawn without replacement.
std::vector<Window> sample_partitions(Index n_total, int big_m, int m, std::uint64_t seed,
                                      Index s_min);

// (n_small, n_large) under the cut rho * s_max, small inclusive.
std::pair<Index, Index> classify_windows(const std::vector<Window>& windows, double rho,
                                         Index s_max);
std::pair<Index, Index> classify_windows(const ResultSet& windows, double rho, Index s_max);

SelectionReport compute_scores(const TrialStats& stats, double alpha);

SelectionReport select_method(const TimeSeriesPair& pair, const SearchParams& params,
                              const SearchOptions& options = {});

}  // namespace sycos
