#include "sycos/incremental_mi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sycos {

namespace {

constexpr std::int64_t kCoordLimit = (std::int64_t{1} << 31) - 1;

void push_best(std::vector<std::pair<double, PointId>>& best, std::size_t k,
               std::pair<double, PointId> cand) {
  if (best.size() < k) {
    best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
  } else if (cand < best.back()) {
    best.pop_back();
    best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
  }
}

void sorted_insert(std::vector<double>& v, double a) {
  v.insert(std::upper_bound(v.begin(), v.end(), a), a);
}

void sorted_erase(std::vector<double>& v, double a) {
  auto it = std::lower_bound(v.begin(), v.end(), a);
  if (it == v.end() || *it != a) throw StateDesyncError("sorted marginal lost a value");
  v.erase(it);
}

}  // namespace

BoxGrid::BoxGrid(double cell_size) : cell_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw ConfigError("cell size must be positive");
}

std::int64_t BoxGrid::coord(double v) const {
  const double c = std::floor(v / cell_);
  if (c >= static_cast<double>(kCoordLimit)) return kCoordLimit;
  if (c <= -static_cast<double>(kCoordLimit)) return -kCoordLimit;
  return static_cast<std::int64_t>(c);
}

std::uint64_t BoxGrid::key(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
         static_cast<std::uint32_t>(cy);
}

void BoxGrid::insert(PointId id, double x, double y) {
  cells_[key(coord(x), coord(y))].push_back({id, x, y});
}

void BoxGrid::erase(PointId id, double x, double y) {
  auto it = cells_.find(key(coord(x), coord(y)));
  if (it == cells_.end()) throw StateDesyncError("grid cell missing for point " + std::to_string(id));
  auto& bucket = it->second;
  auto pos = std::find_if(bucket.begin(), bucket.end(), [&](const Entry& e) { return e.id == id; });
  if (pos == bucket.end()) throw StateDesyncError("grid lost point " + std::to_string(id));
  *pos = bucket.back();
  bucket.pop_back();
  if (bucket.empty()) cells_.erase(it);
}

void BoxGrid::knn(double x, double y, PointId self, int k,
                  std::vector<std::pair<double, PointId>>& best) const {
  const std::size_t kk = static_cast<std::size_t>(k);
  best.clear();
  auto visit = [&](std::int64_t cx, std::int64_t cy) {
    auto it = cells_.find(key(cx, cy));
    if (it == cells_.end()) return;
    for (const Entry& e : it->second)
      if (e.id != self) push_best(best, kk, {max_norm(x, y, e.x, e.y), e.id});
  };
  const std::int64_t cx = coord(x), cy = coord(y);
  const double slack = 1e-12 * (std::fabs(x) + std::fabs(y));
  for (std::int64_t r = 0;; ++r) {
    const double side = static_cast<double>(2 * r + 1);
    if (side * side > static_cast<double>(cells_.size()) + 8.0) {
      best.clear();
      for (const auto& [kkey, bucket] : cells_)
        for (const Entry& e : bucket)
          if (e.id != self) push_best(best, kk, {max_norm(x, y, e.x, e.y), e.id});
      return;
    }
    if (r == 0) {
      visit(cx, cy);
    } else {
      for (std::int64_t dx = -r; dx <= r; ++dx) {
        visit(cx + dx, cy - r);
        visit(cx + dx, cy + r);
      }
      for (std::int64_t dy = -r + 1; dy <= r - 1; ++dy) {
        visit(cx - r, cy + dy);
        visit(cx + r, cy + dy);
      }
    }
    if (best.size() == kk) {
      const double reach = static_cast<double>(r) * cell_;
      if (best.back().first < reach * (1.0 - 1e-12) - slack) return;
    }
  }
}

double default_cell_size(double range_x, double range_y, std::size_t n, int k) {
  const double frac = std::sqrt(static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(n, 1)));
  double range = std::sqrt(range_x * range_y);
  if (!(range > 0.0) || !std::isfinite(range)) range = std::max(range_x, range_y);
  if (!(range > 0.0) || !std::isfinite(range)) return 1.0;
  const double c = range * frac;
  return c > 0.0 && std::isfinite(c) ? c : 1.0;
}

MiState::MiState(int k, CountConvention conv) : k_(k), conv_(conv) {
  if (k < 1) throw ConfigError("k must be positive");
}

MiState MiState::build(const TimeSeriesPair& pair, const Window& w, int k, CountConvention conv) {
  pair.check_window(w);
  if (w.size() <= static_cast<std::size_t>(k))
    throw InsufficientSamplesError("window " + to_string(w) + " has no more than k samples");
  MiState s(k, conv);
  auto xs = pair.x(w);
  auto ys = pair.y(w);
  s.sorted_x_.assign(xs.begin(), xs.end());
  s.sorted_y_.assign(ys.begin(), ys.end());
  std::sort(s.sorted_x_.begin(), s.sorted_x_.end());
  std::sort(s.sorted_y_.begin(), s.sorted_y_.end());
  s.slots_.reserve(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    PointRecord r;
    r.id = w.start + i;
    r.x = xs[i];
    r.y = ys[i];
    r.live = true;
    r.dirty = true;
    s.index_.emplace(r.id, static_cast<std::uint32_t>(s.slots_.size()));
    s.dirty_.push_back(static_cast<std::uint32_t>(s.slots_.size()));
    s.slots_.push_back(r);
  }
  s.rebuild_grid();
  s.window_ = w;
  return s;
}

MiState MiState::build(const TimeSeriesPair& pair, int k, CountConvention conv) {
  return build(pair, Window{0, pair.size()}, k, conv);
}

void MiState::rebuild_grid() {
  const std::size_t n = index_.size();
  const double rx = n ? sorted_x_.back() - sorted_x_.front() : 0.0;
  const double ry = n ? sorted_y_.back() - sorted_y_.front() : 0.0;
  grid_ = BoxGrid(default_cell_size(rx, ry, n, k_));
  for (const auto& [id, slot] : index_) grid_.insert(id, slots_[slot].x, slots_[slot].y);
  grid_n_ = n;
  ++stats_.rebuilds;
}

const PointRecord& MiState::record(PointId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw NotFoundError("no live point " + std::to_string(id));
  return slots_[it->second];
}

void MiState::enqueue(PointRecord& r) {
  if (r.queued) return;
  r.queued = true;
  dirty_.push_back(static_cast<std::uint32_t>(&r - slots_.data()));
}

void MiState::mark_dirty(PointRecord& r) {
  r.dirty = true;
  r.recount = false;
  enqueue(r);
}

void MiState::insert_point(PointId id, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("non-finite point");
  if (index_.count(id)) throw ContractError("point " + std::to_string(id) + " already live");
  window_.reset();
  const std::size_t cap = list_capacity();
  for (PointRecord& r : slots_) {
    if (!r.live || r.dirty) continue;
    const Neighbor cand{max_norm(r.x, r.y, x, y), id, std::fabs(x - r.x), std::fabs(y - r.y)};
    if (cand < r.nbrs.back()) {
      const bool inner = cand < r.nbrs[static_cast<std::size_t>(k_) - 1];
      r.nbrs.insert(std::upper_bound(r.nbrs.begin(), r.nbrs.end(), cand), cand);
      if (r.nbrs.size() > cap) r.nbrs.pop_back();
      ++stats_.list_updates;
      if (inner) {
        restat(r);
        enqueue(r);
        continue;
      }
    }
    if (r.recount) continue;
    if (within(x, r.x, r.stat.eps_x)) {
      ++r.stat.n_x;
      ++stats_.count_updates;
    }
    if (within(y, r.y, r.stat.eps_y)) {
      ++r.stat.n_y;
      ++stats_.count_updates;
    }
  }
  std::uint32_t slot;
  if (!free_.empty()) {
    slot = free_.back();
    free_.pop_back();
  } else {
    slot = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  PointRecord& r = slots_[slot];
  r = PointRecord{};
  r.id = id;
  r.x = x;
  r.y = y;
  r.live = true;
  r.dirty = true;
  r.queued = true;
  dirty_.push_back(slot);
  index_.emplace(id, slot);
  sorted_insert(sorted_x_, x);
  sorted_insert(sorted_y_, y);
  grid_.insert(id, x, y);
  maybe_audit();
}

void MiState::remove_point(PointId id) {
  auto it = index_.find(id);
  if (it == index_.end()) throw NotFoundError("no live point " + std::to_string(id));
  const std::uint32_t slot = it->second;
  PointRecord& gone = slots_[slot];
  const double x = gone.x, y = gone.y;
  gone.live = false;
  gone.dirty = false;
  gone.recount = false;
  gone.nbrs.clear();
  index_.erase(it);
  free_.push_back(slot);
  grid_.erase(id, x, y);
  sorted_erase(sorted_x_, x);
  sorted_erase(sorted_y_, y);
  window_.reset();
  const std::size_t kk = static_cast<std::size_t>(k_);
  for (PointRecord& r : slots_) {
    if (!r.live || r.dirty) continue;
    if (max_norm(r.x, r.y, x, y) <= r.nbrs.back().dist) {
      auto pos = std::find_if(r.nbrs.begin(), r.nbrs.end(), [&](const Neighbor& nb) { return nb.id == id; });
      if (pos != r.nbrs.end()) {
        const bool inner = static_cast<std::size_t>(pos - r.nbrs.begin()) < kk;
        r.nbrs.erase(pos);
        if (r.nbrs.size() < kk) {
          mark_dirty(r);
          continue;
        }
        if (inner) {
          restat(r);
          enqueue(r);
          continue;
        }
      }
    }
    if (r.recount) continue;
    if (within(x, r.x, r.stat.eps_x)) {
      --r.stat.n_x;
      ++stats_.count_updates;
    }
    if (within(y, r.y, r.stat.eps_y)) {
      --r.stat.n_y;
      ++stats_.count_updates;
    }
  }
  maybe_audit();
}

void MiState::slide(const TimeSeriesPair& pair, const Window& from, const Window& to) {
  if (!window_ || *window_ != from)
    throw StateDesyncError("state is not positioned on " + to_string(from));
  pair.check_window(to);
  if (from == to) return;
  for (Index i = from.start; i < from.end; ++i)
    if (!to.contains(i)) remove_point(i);
  const auto xs = pair.x();
  const auto ys = pair.y();
  for (Index i = to.start; i < to.end; ++i)
    if (!from.contains(i)) insert_point(i, xs[i], ys[i]);
  window_ = to;
}

void MiState::refresh(PointRecord& r) {
  thread_local std::vector<std::pair<double, PointId>> best;
  grid_.knn(r.x, r.y, r.id, static_cast<int>(list_capacity()), best);
  ++stats_.knn_searches;
  r.nbrs.clear();
  for (const auto& [d, j] : best) {
    const PointRecord& o = slots_[index_.at(j)];
    r.nbrs.push_back({d, j, std::fabs(o.x - r.x), std::fabs(o.y - r.y)});
  }
  r.dirty = false;
  restat(r);
  recount(r);
}

void MiState::restat(PointRecord& r) {
  PointStat s;
  const std::size_t kk = static_cast<std::size_t>(k_);
  s.radius = r.nbrs[kk - 1].dist;
  for (std::size_t i = 0; i < kk; ++i) {
    s.eps_x = std::max(s.eps_x, r.nbrs[i].dx);
    s.eps_y = std::max(s.eps_y, r.nbrs[i].dy);
  }
  r.stat = s;
  r.recount = true;
}

void MiState::recount(PointRecord& r) {
  r.stat.n_x = static_cast<std::uint32_t>(count_within(sorted_x_, r.x, r.stat.eps_x) - 1);
  r.stat.n_y = static_cast<std::uint32_t>(count_within(sorted_y_, r.y, r.stat.eps_y) - 1);
  r.recount = false;
}

MiEstimate MiState::finalize() {
  const std::size_t n = index_.size();
  if (n <= static_cast<std::size_t>(k_))
    throw InsufficientSamplesError("state holds " + std::to_string(n) + " points, need more than k");
  if (n > 2 * grid_n_ || 2 * n < grid_n_) rebuild_grid();
  for (std::uint32_t slot : dirty_) {
    PointRecord& r = slots_[slot];
    r.queued = false;
    if (!r.live) continue;
    if (r.dirty) {
      refresh(r);
    } else if (r.recount) {
      recount(r);
    }
  }
  dirty_.clear();
  std::vector<PointStat> stats;
  std::vector<double> xs, ys;
  stats.reserve(n);
  xs.reserve(n);
  ys.reserve(n);
  for (const auto& [id, slot] : index_) {
    const PointRecord& r = slots_[slot];
    stats.push_back(r.stat);
    xs.push_back(r.x);
    ys.push_back(r.y);
  }
  maybe_audit();
  return assemble_estimate(stats, xs, ys, k_, conv_);
}

void MiState::maybe_audit() const {
  if (audit_) audit();
}

void MiState::audit() const {
  std::vector<double> xs, ys;
  std::vector<PointId> ids;
  for (const auto& [id, slot] : index_) {
    ids.push_back(id);
    xs.push_back(slots_[slot].x);
    ys.push_back(slots_[slot].y);
  }
  std::vector<double> sx = xs, sy = ys;
  std::sort(sx.begin(), sx.end());
  std::sort(sy.begin(), sy.end());
  if (sx != sorted_x_ || sy != sorted_y_) throw StateDesyncError("sorted marginals out of sync");
  if (ids.size() <= static_cast<std::size_t>(k_)) return;
  const auto fresh = knn_stats(xs, ys, k_);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const PointRecord& r = slots_[index_.at(ids[i])];
    if (r.dirty || r.recount) continue;
    const PointStat& a = r.stat;
    const PointStat& b = fresh[i];
    if (a.radius != b.radius || a.eps_x != b.eps_x || a.eps_y != b.eps_y || a.n_x != b.n_x ||
        a.n_y != b.n_y)
      throw StateDesyncError("record " + std::to_string(ids[i]) + " is stale");
  }
}

}  // namespace sycos
