#include "sycos/core_types.hpp"

#include <algorithm>
#include <cmath>

namespace sycos {

std::string to_string(const Window& w) {
  return "[" + std::to_string(w.start) + "," + std::to_string(w.end) + ")";
}

const char* to_string(Method m) { return m == Method::TD ? "td" : "bu"; }

TimeSeriesPair::TimeSeriesPair(std::vector<double> x, std::vector<double> y,
                               std::vector<std::int64_t> timestamps)
    : x_(std::move(x)), y_(std::move(y)), ts_(std::move(timestamps)) {
  if (x_.size() != y_.size())
    throw ConfigError("series lengths differ: " + std::to_string(x_.size()) + " vs " +
                      std::to_string(y_.size()));
  if (x_.size() < 2) throw ConfigError("a series pair needs at least 2 samples");
  if (!ts_.empty() && ts_.size() != x_.size())
    throw ConfigError("timestamp count does not match series length");
  for (std::size_t i = 0; i < x_.size(); ++i)
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
      throw ConfigError("non-finite sample at index " + std::to_string(i));
}

void TimeSeriesPair::check_window(const Window& w) const {
  if (w.start >= w.end || w.end > size())
    throw BoundsError("window " + to_string(w) + " outside series of length " +
                      std::to_string(size()));
}

std::span<const double> TimeSeriesPair::x(const Window& w) const {
  check_window(w);
  return std::span<const double>(x_).subspan(w.start, w.size());
}

std::span<const double> TimeSeriesPair::y(const Window& w) const {
  check_window(w);
  return std::span<const double>(y_).subspan(w.start, w.size());
}

TimeSeriesPair slice(const TimeSeriesPair& pair, const Window& w) {
  pair.check_window(w);
  auto xs = pair.x(w);
  auto ys = pair.y(w);
  std::vector<std::int64_t> ts;
  if (pair.has_timestamps())
    ts.assign(pair.timestamps().begin() + static_cast<std::ptrdiff_t>(w.start),
              pair.timestamps().begin() + static_cast<std::ptrdiff_t>(w.end));
  return TimeSeriesPair({xs.begin(), xs.end()}, {ys.begin(), ys.end()}, std::move(ts));
}

bool ResultSet::conflicts(const Window& w) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), w.end,
                             [](const CorrelatedWindow& c, Index e) { return c.window.start < e; });
  return it != items_.begin() && std::prev(it)->window.end > w.start;
}

void ResultSet::insert(const CorrelatedWindow& cw) {
  if (cw.window.empty()) throw ContractError("empty window " + to_string(cw.window));
  auto it = std::lower_bound(
      items_.begin(), items_.end(), cw.window.start,
      [](const CorrelatedWindow& c, Index s) { return c.window.start < s; });
  if (it != items_.end() && it->window.overlaps(cw.window))
    throw OverlapError(to_string(cw.window) + " overlaps " + to_string(it->window));
  if (it != items_.begin() && std::prev(it)->window.overlaps(cw.window))
    throw OverlapError(to_string(cw.window) + " overlaps " + to_string(std::prev(it)->window));
  items_.insert(it, cw);
}

Index ResultSet::covered() const {
  Index total = 0;
  for (const auto& c : items_) total += c.window.size();
  return total;
}

ResultSet insert_disjoint(ResultSet rs, const CorrelatedWindow& cw) {
  rs.insert(cw);
  return rs;
}

Index SearchParams::td_delta(Index size) const {
  if (delta_td > 0) return delta_td;
  return std::max<Index>(1, size / 4);
}

Index SearchParams::bu_delta() const {
  if (delta_bu > 0) return delta_bu;
  return std::max<Index>(1, s_min / 3);
}

SearchParams SearchParams::resolved(Index n) const {
  SearchParams p = *this;
  if (p.s_max == 0) p.s_max = n;
  return p;
}

void validate(const SearchParams& p, Index n) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  const Index s_max = p.s_max == 0 ? n : p.s_max;
  if (p.s_min < 2) fail("s_min must be at least 2");
  if (p.s_min > s_max) fail("s_min exceeds s_max");
  if (s_max > n) fail("s_max exceeds series length " + std::to_string(n));
  if (p.k < 1) fail("k must be positive");
  if (static_cast<Index>(p.k) >= p.s_min) fail("k must be smaller than s_min");
  if (!(p.sigma > 0.0 && p.sigma <= 1.0)) fail("sigma must lie in (0, 1]");
  if (!(p.tau_ratio >= 0.0 && p.tau_ratio < 1.0)) fail("tau ratio must lie in [0, 1)");
  if (p.max_idle < 0) fail("max idle must be non-negative");
  if (p.history < 1) fail("history length must be positive");
  if (p.p < 1) fail("p must be positive");
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) fail("alpha must lie in [0, 1]");
  if (!(p.rho > 0.0 && p.rho <= 1.0)) fail("rho must lie in (0, 1]");
  if (p.m < 1 || p.m > p.big_m) fail("m must lie in [1, M]");
  if (!p.td_sizes.empty()) {
    if (p.td_sizes.front() != s_max) fail("layer schedule must start at s_max");
    for (std::size_t i = 0; i < p.td_sizes.size(); ++i) {
      if (p.td_sizes[i] < p.s_min) fail("layer size below s_min");
      if (i > 0 && p.td_sizes[i] >= p.td_sizes[i - 1]) fail("layer sizes must strictly decrease");
    }
  }
}

}  // namespace sycos
