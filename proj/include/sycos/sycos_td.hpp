#pragma once

#include <vector>

#include "sycos/core_types.hpp"
#include "sycos/search_common.hpp"

namespace sycos {

// Layer sizes from s_max downwards; explicit params.td_sizes win over halving.
std::vector<Index> layer_schedule(const SearchParams& params);
void validate_schedule(const std::vector<Index>& sizes, const SearchParams& params);

enum class TdStep { Shift, SkipPastWindow };

// Streak bookkeeping for one noise verdict.
TdStep td_streak_step(bool is_noise, int p, int& streak);

// Decides whether the scan may jump past `shifted`, using the overlap as base
// and the fresh delta tail as the suspect extension.
TdStep td_noise_step(const Window& current, const Window& shifted, const TimeSeriesPair& pair,
                     const SearchParams& params, int& streak);

SearchResult run_td(const TimeSeriesPair& pair, const SearchParams& params,
                    const SearchOptions& options = {});
SearchResult run_td(const TimeSeriesPair& pair, const SearchParams& params,
                    const std::vector<Index>& schedule, const SearchOptions& options);

}  // namespace sycos
