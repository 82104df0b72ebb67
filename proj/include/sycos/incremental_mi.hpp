#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sycos/core_types.hpp"
#include "sycos/ksg_mi.hpp"

namespace sycos {

using PointId = std::uint64_t;

// Square-cell spatial hash over live points.
class BoxGrid {
 public:
  struct Entry {
    PointId id;
    double x;
    double y;
  };

  BoxGrid() = default;
  explicit BoxGrid(double cell_size);

  double cell_size() const { return cell_; }
  std::size_t cell_count() const { return cells_.size(); }

  void insert(PointId id, double x, double y);
  void erase(PointId id, double x, double y);

  // k nearest live points other than `self`, ordered by (distance, id).
  void knn(double x, double y, PointId self, int k,
           std::vector<std::pair<double, PointId>>& best) const;

 private:
  static std::uint64_t key(std::int64_t cx, std::int64_t cy);
  std::int64_t coord(double v) const;

  double cell_ = 1.0;
  std::unordered_map<std::uint64_t, std::vector<Entry>> cells_;
};

double default_cell_size(double range_x, double range_y, std::size_t n, int k);

struct Neighbor {
  double dist = 0.0;
  PointId id = 0;
  double dx = 0.0;  // |x offset|
  double dy = 0.0;  // |y offset|

  bool operator<(const Neighbor& o) const { return dist < o.dist || (dist == o.dist && id < o.id); }
};

struct PointRecord {
  PointId id = 0;
  double x = 0.0;
  double y = 0.0;
  PointStat stat;
  std::vector<Neighbor> nbrs;  // nearest by (distance, id), at least k and at most 2k
  bool dirty = true;           // neighborhood must be searched again
  bool recount = false;        // neighbor list patched, marginal counts stale
  bool queued = false;
  bool live = false;
};

struct MiStateStats {
  std::uint64_t knn_searches = 0;
  std::uint64_t count_updates = 0;  // marginal counts adjusted without a search
  std::uint64_t list_updates = 0;   // k-NN lists patched by an insertion
  std::uint64_t rebuilds = 0;
};

// KSG state over a mutable point set. Each point keeps its 2k nearest
// neighbors; insertions and removals patch these lists, and a point is
// searched again only once its list drops below k. finalize() searches and
// recounts only the affected points.
class MiState {
 public:
  MiState() = default;
  MiState(int k, CountConvention conv = CountConvention::kPlain);

  static MiState build(const TimeSeriesPair& pair, const Window& w, int k,
                       CountConvention conv = CountConvention::kPlain);
  static MiState build(const TimeSeriesPair& pair, int k,
                       CountConvention conv = CountConvention::kPlain);

  void insert_point(PointId id, double x, double y);
  void remove_point(PointId id);
  // Moves the state from window `from` to window `to` of `pair`.
  void slide(const TimeSeriesPair& pair, const Window& from, const Window& to);

  MiEstimate finalize();

  std::size_t size() const { return index_.size(); }
  int k() const { return k_; }
  const std::optional<Window>& window() const { return window_; }
  const MiStateStats& stats() const { return stats_; }
  const BoxGrid& grid() const { return grid_; }
  std::size_t pending() const { return dirty_.size(); }
  const PointRecord& record(PointId id) const;

  // Re-derives every clean record from scratch; throws StateDesyncError on mismatch.
  void audit() const;
  void set_audit(bool on) { audit_ = on; }

 private:
  void rebuild_grid();
  void enqueue(PointRecord& r);
  void mark_dirty(PointRecord& r);
  void recount(PointRecord& r);
  void restat(PointRecord& r);
  std::size_t list_capacity() const { return 2 * static_cast<std::size_t>(k_); }
  void refresh(PointRecord& r);
  void maybe_audit() const;

  int k_ = 4;
  CountConvention conv_ = CountConvention::kPlain;
  BoxGrid grid_;
  std::size_t grid_n_ = 0;
  std::vector<PointRecord> slots_;
  std::vector<std::uint32_t> free_;
  std::map<PointId, std::uint32_t> index_;
  std::vector<std::uint32_t> dirty_;
  std::vector<double> sorted_x_;
  std::vector<double> sorted_y_;
  std::optional<Window> window_;
  MiStateStats stats_;
  bool audit_ = false;
};

}  // namespace sycos
