#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sycos {

using Index = std::size_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};
class BoundsError : public Error {
 public:
  using Error::Error;
};
class OverlapError : public Error {
 public:
  using Error::Error;
};
class InsufficientSamplesError : public Error {
 public:
  using Error::Error;
};
class DomainError : public Error {
 public:
  using Error::Error;
};
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};
class NotFoundError : public Error {
 public:
  using Error::Error;
};
class StateDesyncError : public Error {
 public:
  using Error::Error;
};
class ContractError : public Error {
 public:
  using Error::Error;
};
class IngestError : public Error {
 public:
  using Error::Error;
};

// Half-open index interval [start, end).
struct Window {
  Index start = 0;
  Index end = 0;

  Index size() const { return end - start; }
  bool empty() const { return end <= start; }
  bool overlaps(const Window& o) const { return start < o.end && o.start < end; }
  bool contains(const Window& o) const { return start <= o.start && o.end <= end; }
  bool contains(Index i) const { return start <= i && i < end; }

  auto operator<=>(const Window&) const = default;
};

std::string to_string(const Window& w);

// Two equal-length, finite series sampled on a shared clock.
class TimeSeriesPair {
 public:
  TimeSeriesPair() = default;
  TimeSeriesPair(std::vector<double> x, std::vector<double> y,
                 std::vector<std::int64_t> timestamps = {});

  Index size() const { return x_.size(); }
  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }
  std::span<const double> x(const Window& w) const;
  std::span<const double> y(const Window& w) const;
  bool has_timestamps() const { return !ts_.empty(); }
  const std::vector<std::int64_t>& timestamps() const { return ts_; }

  void check_window(const Window& w) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<std::int64_t> ts_;
};

TimeSeriesPair slice(const TimeSeriesPair& pair, const Window& w);

enum class Method { TD, BU };

const char* to_string(Method m);

struct CorrelatedWindow {
  Window window;
  double mi = 0.0;
  double normalized_mi = 0.0;
  Method method = Method::TD;

  bool operator==(const CorrelatedWindow&) const = default;
};

// Disjoint windows kept sorted by start.
class ResultSet {
 public:
  void insert(const CorrelatedWindow& cw);
  bool conflicts(const Window& w) const;

  const std::vector<CorrelatedWindow>& windows() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  Index covered() const;
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool operator==(const ResultSet&) const = default;

 private:
  std::vector<CorrelatedWindow> items_;
};

ResultSet insert_disjoint(ResultSet rs, const CorrelatedWindow& cw);

struct SearchParams {
  double sigma = 0.2;
  double tau_ratio = 0.25;
  Index delta_td = 0;  // 0 selects max(1, size/4) per layer
  Index delta_bu = 0;  // 0 selects max(1, s_min/3)
  Index s_min = 30;
  Index s_max = 0;     // 0 selects the series length
  int k = 4;
  int max_idle = 3;
  int history = 5;
  int p = 3;
  double alpha = 0.5;
  double rho = 0.5;
  int m = 6;
  int big_m = 20;
  std::uint64_t seed = 42;
  std::vector<Index> td_sizes;  // explicit layer schedule, empty for halving

  double tau() const { return tau_ratio * sigma; }
  Index td_delta(Index size) const;
  Index bu_delta() const;
  // Copy with s_max resolved against a series of length n.
  SearchParams resolved(Index n) const;
};

void validate(const SearchParams& p, Index n);

}  // namespace sycos
