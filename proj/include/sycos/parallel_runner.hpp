#pragma once

#include <optional>
#include <vector>

#include "sycos/core_types.hpp"
#include "sycos/search_common.hpp"
#include "sycos/selector.hpp"

namespace sycos {

enum class MethodChoice { TD, BU, Auto };

struct ChunkPlan {
  std::vector<Window> chunks;
};

// Chunk i covers [i*n/n_p - s_max, (i+1)*n/n_p), clipped at zero.
ChunkPlan plan_chunks(Index n, int n_p, Index s_max);

struct ChunkOutcome {
  Window chunk;
  Method method = Method::TD;
  std::size_t found = 0;
  SearchStats stats;
};

struct ParallelResult {
  ResultSet windows;
  std::vector<ChunkOutcome> chunks;
  std::optional<SelectionReport> selection;
  double runtime_seconds = 0.0;
};

// Keeps the highest normalized MI among overlapping windows; input order is irrelevant.
ResultSet merge_windows(std::vector<CorrelatedWindow> all);

ParallelResult run_parallel(const TimeSeriesPair& pair, const SearchParams& params,
                            MethodChoice method, int n_p, int workers,
                            const SearchOptions& options = {});

}  // namespace sycos
