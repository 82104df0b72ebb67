#include "sycos/search_common.hpp"

namespace sycos {

void SearchStats::absorb(const SearchStats& o) {
  mi_evaluations += o.mi_evaluations;
  cache_hits += o.cache_hits;
  knn_searches += o.knn_searches;
  windows_visited += o.windows_visited;
  noise_checks += o.noise_checks;
  noise_verdicts += o.noise_verdicts;
  prune_events += o.prune_events;
  runtime_seconds += o.runtime_seconds;
}

WindowScorer::WindowScorer(const TimeSeriesPair& pair, int k, CountConvention conv,
                           SearchStats& stats)
    : pair_(pair), k_(k), conv_(conv), stats_(stats) {}

const MiEstimate* WindowScorer::cached(const Window& w) const {
  auto it = memo_.find(w);
  return it == memo_.end() ? nullptr : &it->second;
}

const MiEstimate& WindowScorer::store(const Window& w, const MiEstimate& e) {
  ++stats_.mi_evaluations;
  return memo_.emplace(w, e).first->second;
}

const MiEstimate& WindowScorer::scratch(const Window& w) {
  if (const MiEstimate* hit = cached(w)) {
    ++stats_.cache_hits;
    return *hit;
  }
  stats_.knn_searches += w.size();
  return store(w, estimate_mi(pair_.x(w), pair_.y(w), k_, conv_));
}

const MiEstimate& WindowScorer::via(std::optional<MiState>& state, const Window& w) {
  if (const MiEstimate* hit = cached(w)) {
    ++stats_.cache_hits;
    return *hit;
  }
  return store(w, position(state, w));
}

MiEstimate WindowScorer::position(std::optional<MiState>& state, const Window& w) {
  std::uint64_t before = 0;
  if (state && state->window() && state->window()->overlaps(w)) {
    before = state->stats().knn_searches;
    state->slide(pair_, *state->window(), w);
  } else {
    state = MiState::build(pair_, w, k_, conv_);
  }
  const MiEstimate e = state->finalize();
  stats_.knn_searches += state->stats().knn_searches - before;
  return e;
}

const MiEstimate& WindowScorer::branch(const MiState& base, const Window& w,
                                       std::optional<MiState>& out) {
  if (base.window() && base.window()->overlaps(w)) {
    out = base;
  } else {
    out.reset();
  }
  const std::uint64_t before = out ? out->stats().knn_searches : 0;
  if (out) {
    out->slide(pair_, *out->window(), w);
  } else {
    out = MiState::build(pair_, w, k_, conv_);
  }
  const MiEstimate e = out->finalize();
  stats_.knn_searches += out->stats().knn_searches - before;
  if (const MiEstimate* hit = cached(w)) {
    ++stats_.cache_hits;
    return *hit;
  }
  return store(w, e);
}

}  // namespace sycos
