#include "sycos/sycos_td.hpp"

#include <chrono>
#include <optional>

#include "sycos/noise.hpp"

namespace sycos {

std::vector<Index> layer_schedule(const SearchParams& params) {
  if (!params.td_sizes.empty()) return params.td_sizes;
  std::vector<Index> sizes{params.s_max};
  while (sizes.back() / 2 >= params.s_min) sizes.push_back(sizes.back() / 2);
  return sizes;
}

void validate_schedule(const std::vector<Index>& sizes, const SearchParams& params) {
  if (sizes.empty()) throw ConfigError("empty layer schedule");
  if (sizes.front() != params.s_max) throw ConfigError("layer schedule must start at s_max");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < params.s_min) throw ConfigError("layer size below s_min");
    if (i > 0 && sizes[i] >= sizes[i - 1]) throw ConfigError("layer sizes must strictly decrease");
  }
}

TdStep td_streak_step(bool is_noise, int p, int& streak) {
  if (!is_noise) {
    streak = 0;
    return TdStep::Shift;
  }
  if (++streak >= p) {
    streak = 0;
    return TdStep::SkipPastWindow;
  }
  return TdStep::Shift;
}

TdStep td_noise_step(const Window& current, const Window& shifted, const TimeSeriesPair& pair,
                     const SearchParams& params, int& streak) {
  if (!(current.start < shifted.start && shifted.start < current.end && current.end < shifted.end))
    throw ContractError("shifted window must overlap the current one and extend past it");
  const Window base{shifted.start, current.end};
  const Window ext{current.end, shifted.end};
  const NoiseVerdict v = check_noise(pair, base, ext, params.tau(), params.k);
  return td_streak_step(v.is_noise, params.p, streak);
}

namespace {

class TdRun {
 public:
  TdRun(const TimeSeriesPair& pair, const SearchParams& params, const SearchOptions& options,
        SearchResult& out)
      : pair_(pair),
        params_(params),
        options_(options),
        out_(out),
        scorer_(pair, params.k, options.convention, out.stats) {}

  void layer(Index size, const std::vector<Window>& parts, std::vector<Window>& next) {
    const Index delta = params_.td_delta(size);
    for (const Window& part : parts) {
      if (part.size() < size) {
        next.push_back(part);
        continue;
      }
      scan(part, size, delta, next);
    }
  }

 private:
  const MiEstimate& score(const Window& w) {
    return options_.incremental ? scorer_.via(cursor_, w) : scorer_.scratch(w);
  }

  // The overlap is the cursor window minus its head, so the cursor shrinks
  // onto it and later grows into the shifted window.
  const MiEstimate& overlap(const Window& base) {
    if (const MiEstimate* hit = scorer_.cached(base)) return *hit;
    if (!cursor_) return scorer_.scratch(base);
    std::optional<MiState> moved;
    const MiEstimate& e = scorer_.branch(*cursor_, base, moved);
    cursor_ = std::move(moved);
    return e;
  }

  void keep(Index from, Index to, std::vector<Window>& next) const {
    if (to > from && to - from >= params_.s_min) next.push_back({from, to});
  }

  void scan(const Window& part, Index size, Index delta, std::vector<Window>& next) {
    cursor_.reset();
    Index pending = part.start;
    Index s = part.start;
    int streak = 0;
    const double sigma = params_.sigma;
    const Index kk = static_cast<Index>(params_.k);
    while (s + size <= part.end) {
      const Window w{s, s + size};
      ++out_.stats.windows_visited;
      const MiEstimate& e = score(w);
      if (e.normalized >= sigma) {
        out_.windows.insert({w, e.mi_nats, e.normalized, Method::TD});
        keep(pending, w.start, next);
        pending = w.end;
        s = w.end;
        streak = 0;
        continue;
      }
      Index step = delta;
      const Window w1{s + delta, s + delta + size};
      if (options_.noise_pruning && delta > kk && delta < size && size - delta > kk &&
          w1.end <= part.end) {
        ++out_.stats.noise_checks;
        const Window base{w1.start, w.end};
        const Window ext{w.end, w1.end};
        const NoiseVerdict v = check_noise_lazy(base, ext, params_.tau(), [&](const Window& q) {
          if (q == w1) return score(q).normalized;
          if (q == base && options_.incremental) return overlap(base).normalized;
          return scorer_.scratch(q).normalized;
        }, options_.incremental);
        if (v.is_noise) ++out_.stats.noise_verdicts;
        if (td_streak_step(v.is_noise, params_.p, streak) == TdStep::SkipPastWindow) {
          const MiEstimate* known = scorer_.cached(w1);
          if (!known || known->normalized < sigma) {
            step = w1.end - s;
            ++out_.stats.prune_events;
          }
        }
      }
      s += step;
    }
    keep(pending, part.end, next);
  }

  const TimeSeriesPair& pair_;
  const SearchParams& params_;
  const SearchOptions& options_;
  SearchResult& out_;
  WindowScorer scorer_;
  std::optional<MiState> cursor_;
};

}  // namespace

SearchResult run_td(const TimeSeriesPair& pair, const SearchParams& params,
                    const std::vector<Index>& schedule, const SearchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const SearchParams p = params.resolved(pair.size());
  validate(p, pair.size());
  validate_schedule(schedule, p);
  SearchResult out;
  TdRun run(pair, p, options, out);
  std::vector<Window> parts{{0, pair.size()}};
  for (Index size : schedule) {
    out.stats.layer_partitions.push_back(parts);
    std::vector<Window> next;
    run.layer(size, parts, next);
    parts = std::move(next);
  }
  out.stats.bottom_partitions = parts;
  out.stats.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

SearchResult run_td(const TimeSeriesPair& pair, const SearchParams& params,
                    const SearchOptions& options) {
  const SearchParams p = params.resolved(pair.size());
  return run_td(pair, p, layer_schedule(p), options);
}

}  // namespace sycos
