#include "sycos/parallel_runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "sycos/sycos_bu.hpp"
#include "sycos/sycos_td.hpp"

namespace sycos {

ChunkPlan plan_chunks(Index n, int n_p, Index s_max) {
  if (n_p < 1) throw ConfigError("chunk count must be positive");
  if (static_cast<Index>(n_p) > n) throw ConfigError("more chunks than samples");
  ChunkPlan plan;
  const Index np = static_cast<Index>(n_p);
  for (Index i = 0; i < np; ++i) {
    const Index base = i * n / np;
    const Index end = (i + 1) * n / np;
    plan.chunks.push_back({base > s_max ? base - s_max : 0, end});
  }
  return plan;
}

ResultSet merge_windows(std::vector<CorrelatedWindow> all) {
  std::sort(all.begin(), all.end(), [](const CorrelatedWindow& a, const CorrelatedWindow& b) {
    if (a.normalized_mi != b.normalized_mi) return a.normalized_mi > b.normalized_mi;
    if (a.mi != b.mi) return a.mi > b.mi;
    if (a.window != b.window) return a.window < b.window;
    return a.method < b.method;
  });
  ResultSet rs;
  for (const auto& c : all)
    if (!rs.conflicts(c.window)) rs.insert(c);
  return rs;
}

namespace {

std::uint64_t chunk_seed(std::uint64_t seed, std::size_t chunk) {
  if (chunk == 0) return seed;
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * chunk;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

ParallelResult run_parallel(const TimeSeriesPair& pair, const SearchParams& params,
                            MethodChoice method, int n_p, int workers,
                            const SearchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const SearchParams p = params.resolved(pair.size());
  validate(p, pair.size());
  if (workers < 1) throw ConfigError("worker count must be positive");
  const ChunkPlan plan = plan_chunks(pair.size(), n_p, p.s_max);

  ParallelResult result;
  Method chosen = method == MethodChoice::BU ? Method::BU : Method::TD;
  if (method == MethodChoice::Auto) {
    result.selection = select_method(pair, p, options);
    chosen = result.selection->chosen;
  }

  const std::size_t count = plan.chunks.size();
  std::vector<SearchResult> outs(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto work = [&]() {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        const TimeSeriesPair sub = slice(pair, plan.chunks[i]);
        SearchParams cp = p;
        cp.seed = chunk_seed(p.seed, i);
        if (sub.size() < cp.s_max) {
          cp.s_max = sub.size();
          cp.td_sizes.clear();
        }
        outs[i] = chosen == Method::TD ? run_td(sub, cp, options) : run_bu(sub, cp, options);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  const int nthreads = std::min<int>(workers, static_cast<int>(count));
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw Error("chunk " + std::to_string(i) + " " + to_string(plan.chunks[i]) +
                  " failed: " + e.what());
    }
  }

  std::vector<CorrelatedWindow> all;
  for (std::size_t i = 0; i < count; ++i) {
    const Index off = plan.chunks[i].start;
    for (CorrelatedWindow c : outs[i].windows) {
      c.window.start += off;
      c.window.end += off;
      all.push_back(c);
    }
    result.chunks.push_back({plan.chunks[i], chosen, outs[i].windows.size(), outs[i].stats});
  }
  result.windows = merge_windows(std::move(all));
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace sycos
