#include "sycos/selector.hpp"

#include <algorithm>
#include <random>

#include "sycos/sycos_bu.hpp"
#include "sycos/sycos_td.hpp"

namespace sycos {

std::vector<Window> sample_partitions(Index n_total, int big_m, int m, std::uint64_t seed,
                                      Index s_min) {
  if (big_m < 1 || m < 1 || m > big_m) throw ConfigError("need 1 <= m <= M");
  const Index len = n_total / static_cast<Index>(big_m);
  if (len < s_min || len < 2)
    throw ConfigError("partitions of length " + std::to_string(len) + " are shorter than s_min");
  std::vector<Window> all;
  for (Index i = 0; i < static_cast<Index>(big_m); ++i) all.push_back({i * len, (i + 1) * len});
  std::vector<Window> out;
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(out), m, rng);
  return out;
}

std::pair<Index, Index> classify_windows(const std::vector<Window>& windows, double rho,
                                         Index s_max) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in (0, 1]");
  const double cut = rho * static_cast<double>(s_max);
  Index small = 0;
  for (const Window& w : windows)
    if (static_cast<double>(w.size()) <= cut) ++small;
  return {small, windows.size() - small};
}

std::pair<Index, Index> classify_windows(const ResultSet& windows, double rho, Index s_max) {
  std::vector<Window> ws;
  for (const auto& c : windows) ws.push_back(c.window);
  return classify_windows(ws, rho, s_max);
}

SelectionReport compute_scores(const TrialStats& stats, double alpha) {
  if (!(stats.avg_runtime_td > 0.0) || !(stats.avg_runtime_bu > 0.0))
    throw ConfigError("both trial runtimes must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  SelectionReport r;
  r.alpha = alpha;
  r.stats = stats;
  const double t_td = stats.avg_runtime_td / (stats.avg_runtime_td + stats.avg_runtime_bu);
  const double t_bu = stats.avg_runtime_bu / (stats.avg_runtime_td + stats.avg_runtime_bu);
  const double total = static_cast<double>(stats.n_small_bu + stats.n_large_td);
  double n_td = 0.5, n_bu = 0.5;
  if (total > 0.0) {
    n_td = static_cast<double>(stats.n_large_td) / total;
    n_bu = static_cast<double>(stats.n_small_bu) / total;
  } else {
    r.degenerate_counts = true;
  }
  r.runtime_share_td = t_td;
  r.count_share_td = n_td;
  r.nscore_td = alpha / t_td + (1.0 - alpha) * n_td;
  r.nscore_bu = alpha / t_bu + (1.0 - alpha) * n_bu;
  r.chosen = r.nscore_td > r.nscore_bu ? Method::TD : Method::BU;
  return r;
}

SelectionReport select_method(const TimeSeriesPair& pair, const SearchParams& params,
                              const SearchOptions& options) {
  const SearchParams p = params.resolved(pair.size());
  validate(p, pair.size());
  const auto parts = sample_partitions(pair.size(), p.big_m, p.m, p.seed, p.s_min);
  TrialStats agg;
  std::vector<PartitionTrial> trials;
  constexpr double kMinRuntime = 1e-9;
  for (const Window& part : parts) {
    const TimeSeriesPair sub = slice(pair, part);
    SearchParams tp = p;
    tp.s_max = std::min(p.s_max, part.size());
    tp.td_sizes.clear();
    PartitionTrial t;
    t.partition = part;
    t.s_max = tp.s_max;
    const SearchResult td = run_td(sub, tp, options);
    const SearchResult bu = run_bu(sub, tp, options);
    t.runtime_td = std::max(td.stats.runtime_seconds, kMinRuntime);
    t.runtime_bu = std::max(bu.stats.runtime_seconds, kMinRuntime);
    std::tie(t.n_small_td, t.n_large_td) = classify_windows(td.windows, p.rho, tp.s_max);
    std::tie(t.n_small_bu, t.n_large_bu) = classify_windows(bu.windows, p.rho, tp.s_max);
    agg.avg_runtime_td += t.runtime_td;
    agg.avg_runtime_bu += t.runtime_bu;
    agg.n_small_td += t.n_small_td;
    agg.n_large_td += t.n_large_td;
    agg.n_small_bu += t.n_small_bu;
    agg.n_large_bu += t.n_large_bu;
    trials.push_back(t);
  }
  agg.avg_runtime_td /= static_cast<double>(parts.size());
  agg.avg_runtime_bu /= static_cast<double>(parts.size());
  SelectionReport r = compute_scores(agg, p.alpha);
  r.rho = p.rho;
  r.partitions = std::move(trials);
  return r;
}

}  // namespace sycos
