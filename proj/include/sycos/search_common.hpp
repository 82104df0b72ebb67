#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sycos/core_types.hpp"
#include "sycos/incremental_mi.hpp"
#include "sycos/ksg_mi.hpp"

namespace sycos {

struct SearchOptions {
  bool noise_pruning = true;
  bool incremental = true;
  CountConvention convention = CountConvention::kPlain;
};

// Climb summary kept for invariant checks.
struct ClimbTrace {
  Window start;
  Window final;
  double final_score = 0.0;
  std::vector<double> history;
  std::vector<double> last_neighbor_scores;
  std::uint64_t iterations = 0;
  bool accepted = false;
  bool capped = false;
};

struct SearchStats {
  std::uint64_t mi_evaluations = 0;  // windows scored without a cache hit
  std::uint64_t cache_hits = 0;
  std::uint64_t knn_searches = 0;
  std::uint64_t windows_visited = 0;
  std::uint64_t noise_checks = 0;
  std::uint64_t noise_verdicts = 0;
  std::uint64_t prune_events = 0;
  double runtime_seconds = 0.0;
  std::vector<std::vector<Window>> layer_partitions;  // TD: input partitions per layer
  std::vector<Window> bottom_partitions;              // TD: leftovers after the last layer
  std::vector<Window> explored;                       // BU: range owned by each climb
  std::vector<ClimbTrace> climbs;                     // BU

  void absorb(const SearchStats& o);
};

struct SearchResult {
  ResultSet windows;
  SearchStats stats;
};

// Per-run memoized window scorer. Scratch and incremental paths produce
// bit-identical estimates, so one cache serves both.
class WindowScorer {
 public:
  WindowScorer(const TimeSeriesPair& pair, int k, CountConvention conv, SearchStats& stats);

  const MiEstimate& scratch(const Window& w);
  // Scores `w`, moving `state` onto it (rebuilding when it shares no samples).
  const MiEstimate& via(std::optional<MiState>& state, const Window& w);
  // Moves `state` onto `w` and finalizes it whether or not `w` is cached.
  MiEstimate position(std::optional<MiState>& state, const Window& w);
  // Scores `w` starting from a copy of `base`; the moved copy is returned in `out`.
  const MiEstimate& branch(const MiState& base, const Window& w, std::optional<MiState>& out);
  const MiEstimate* cached(const Window& w) const;

  const TimeSeriesPair& pair() const { return pair_; }
  int k() const { return k_; }

 private:
  const MiEstimate& store(const Window& w, const MiEstimate& e);

  const TimeSeriesPair& pair_;
  int k_;
  CountConvention conv_;
  SearchStats& stats_;
  std::map<Window, MiEstimate> memo_;
};

}  // namespace sycos
