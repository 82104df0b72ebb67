#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "sycos/core_types.hpp"
#include "sycos/search_common.hpp"

namespace sycos {

enum class Direction { Left = 0, Right = 1 };

// Objective ordering: normalized MI, raw MI as tie-break.
struct Score {
  double normalized = 0.0;
  double raw = 0.0;

  bool operator>(const Score& o) const {
    return normalized > o.normalized || (normalized == o.normalized && raw > o.raw);
  }
  static Score of(const MiEstimate& e) { return {e.normalized, e.raw_mi}; }
};

struct LahcState {
  Window current;
  Score current_score;
  std::vector<Score> history;
  int idle = 0;
  std::mt19937_64 rng;
};

struct DirectionPruning {
  std::array<int, 2> streak{0, 0};
  std::array<bool, 2> pruned{false, false};
};

// 1-neighborhood of `w` at step delta: start and end each move by -delta, 0
// or +delta. Candidates must start at or after `lower`, end by `upper` and
// respect the size bounds; pruned directions drop outward moves of that edge.
std::vector<Window> neighborhood(const Window& w, Index delta, Index lower, Index upper,
                                 Index s_min, Index s_max, const DirectionPruning& pruning);

// Applies one noise verdict to a direction's streak.
void bu_record_verdict(Direction d, bool is_noise, int p, DirectionPruning& pruning);

SearchResult run_bu(const TimeSeriesPair& pair, const SearchParams& params,
                    const SearchOptions& options = {});

}  // namespace sycos
