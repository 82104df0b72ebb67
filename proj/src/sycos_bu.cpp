#include "sycos/sycos_bu.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>

#include "sycos/noise.hpp"

namespace sycos {

std::vector<Window> neighborhood(const Window& w, Index delta, Index lower, Index upper,
                                 Index s_min, Index s_max, const DirectionPruning& pruning) {
  std::vector<Window> out;
  const long long d = static_cast<long long>(delta);
  for (long long ds : {-d, 0LL, d}) {
    for (long long de : {-d, 0LL, d}) {
      if (ds == 0 && de == 0) continue;
      if (ds < 0 && pruning.pruned[static_cast<int>(Direction::Left)]) continue;
      if (de > 0 && pruning.pruned[static_cast<int>(Direction::Right)]) continue;
      const long long s = static_cast<long long>(w.start) + ds;
      const long long e = static_cast<long long>(w.end) + de;
      if (s < static_cast<long long>(lower) || e > static_cast<long long>(upper) || e <= s) continue;
      const Index size = static_cast<Index>(e - s);
      if (size < s_min || size > s_max) continue;
      out.push_back({static_cast<Index>(s), static_cast<Index>(e)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void bu_record_verdict(Direction d, bool is_noise, int p, DirectionPruning& pruning) {
  const int i = static_cast<int>(d);
  if (!is_noise) {
    pruning.streak[i] = 0;
    return;
  }
  if (++pruning.streak[i] >= p) pruning.pruned[i] = true;
}

namespace {

class BuRun {
 public:
  BuRun(const TimeSeriesPair& pair, const SearchParams& params, const SearchOptions& options,
        SearchResult& out)
      : pair_(pair),
        params_(params),
        options_(options),
        out_(out),
        scorer_(pair, params.k, options.convention, out.stats),
        rng_(params.seed) {}

  void run() {
    const Index n = pair_.size();
    Index u = 0;
    while (n - u >= params_.s_min) {
      const Index start = u;
      const auto [w, accepted] = climb(u);
      u = std::max(accepted ? w.end : 0, start + params_.s_min);
      out_.stats.explored.push_back({start, u});
    }
    if (u < n) out_.stats.explored.push_back({u, n});
  }

 private:
  const MiEstimate& score_current(const Window& w) {
    if (!options_.incremental) return scorer_.scratch(w);
    if (const MiEstimate* hit = scorer_.cached(w)) {
      ++out_.stats.cache_hits;
      if (!(state_ && state_->window() == w)) scorer_.position(state_, w);
      return *hit;
    }
    return scorer_.via(state_, w);
  }

  // Scores every candidate, branching incremental states off the current one.
  std::vector<Score> score_all(const std::vector<Window>& cands) {
    std::vector<Score> scores;
    scores.reserve(cands.size());
    for (const Window& c : cands) scores.push_back(score_candidate(c));
    return scores;
  }

  Score score_candidate(const Window& c) {
    ++out_.stats.windows_visited;
    if (const MiEstimate* hit = scorer_.cached(c)) {
      ++out_.stats.cache_hits;
      return Score::of(*hit);
    }
    if (!options_.incremental) return Score::of(scorer_.scratch(c));
    std::optional<MiState> branched;
    const MiEstimate& e = scorer_.branch(*state_, c, branched);
    branches_.insert_or_assign(c, std::move(*branched));
    return Score::of(e);
  }

  void move_to(const Window& w) {
    if (!options_.incremental) return;
    auto it = branches_.find(w);
    if (it != branches_.end()) {
      state_ = std::move(it->second);
    } else {
      scorer_.position(state_, w);
    }
  }

  void check_directions(const LahcState& st, Index lower, DirectionPruning& pruning) {
    const Index delta = params_.bu_delta();
    const Index kk = static_cast<Index>(params_.k);
    if (delta <= kk || st.current.size() + delta > params_.s_max) return;
    for (Direction d : {Direction::Left, Direction::Right}) {
      const int i = static_cast<int>(d);
      if (pruning.pruned[i]) continue;
      Window ext;
      if (d == Direction::Left) {
        if (st.current.start < lower + delta) continue;
        ext = {st.current.start - delta, st.current.start};
      } else {
        if (st.current.end + delta > pair_.size()) continue;
        ext = {st.current.end, st.current.end + delta};
      }
      ++out_.stats.noise_checks;
      const Window mix = concatenate(st.current, ext);
      const NoiseVerdict v = check_noise_lazy(st.current, ext, params_.tau(), [&](const Window& q) {
        if (q == st.current) return st.current_score.normalized;
        if (q == mix) return score_candidate(q).normalized;
        return scorer_.scratch(q).normalized;
      });
      if (v.is_noise) ++out_.stats.noise_verdicts;
      bu_record_verdict(d, v.is_noise, params_.p, pruning);
      if (pruning.pruned[i]) ++out_.stats.prune_events;
    }
  }

  std::pair<Window, bool> climb(Index lower) {
    const Index n = pair_.size();
    const Index delta = params_.bu_delta();
    const std::uint64_t cap = 64 * (params_.s_max / delta + 1);
    LahcState st;
    st.current = {lower, lower + params_.s_min};
    branches_.clear();
    ++out_.stats.windows_visited;
    st.current_score = Score::of(score_current(st.current));
    st.history.assign(static_cast<std::size_t>(params_.history), st.current_score);
    DirectionPruning pruning;
    ClimbTrace trace;
    trace.start = st.current;
    std::uniform_int_distribution<std::size_t> pick(0, st.history.size() - 1);
    while (st.idle <= params_.max_idle) {
      if (trace.iterations >= cap) {
        trace.capped = true;
        break;
      }
      ++trace.iterations;
      if (options_.noise_pruning) check_directions(st, lower, pruning);
      const auto cands =
          neighborhood(st.current, delta, lower, n, params_.s_min, params_.s_max, pruning);
      if (cands.empty()) {
        trace.last_neighbor_scores.clear();
        break;
      }
      const auto scores = score_all(cands);
      std::size_t best = 0;
      for (std::size_t i = 1; i < cands.size(); ++i)
        if (scores[i] > scores[best]) best = i;
      trace.last_neighbor_scores.clear();
      for (const Score& s : scores) trace.last_neighbor_scores.push_back(s.normalized);
      Score& drawn = st.history[pick(rng_)];
      if (scores[best] > drawn || scores[best] > st.current_score) {
        st.current = cands[best];
        st.current_score = scores[best];
        st.idle = 0;
        move_to(st.current);
        branches_.clear();
      } else {
        ++st.idle;
      }
      if (st.current_score > drawn) drawn = st.current_score;
    }
    const MiEstimate& e = scorer_.scratch(st.current);
    const bool accepted = e.normalized >= params_.sigma;
    if (accepted) out_.windows.insert({st.current, e.mi_nats, e.normalized, Method::BU});
    trace.final = st.current;
    trace.final_score = st.current_score.normalized;
    for (const Score& s : st.history) trace.history.push_back(s.normalized);
    trace.accepted = accepted;
    out_.stats.climbs.push_back(std::move(trace));
    branches_.clear();
    return {st.current, accepted};
  }

  const TimeSeriesPair& pair_;
  const SearchParams& params_;
  const SearchOptions& options_;
  SearchResult& out_;
  WindowScorer scorer_;
  std::mt19937_64 rng_;
  std::optional<MiState> state_;
  std::map<Window, MiState> branches_;
};

}  // namespace

SearchResult run_bu(const TimeSeriesPair& pair, const SearchParams& params,
                    const SearchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const SearchParams p = params.resolved(pair.size());
  validate(p, pair.size());
  SearchResult out;
  BuRun run(pair, p, options, out);
  run.run();
  out.stats.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace sycos
