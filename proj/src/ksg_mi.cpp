#include "sycos/ksg_mi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

namespace sycos {

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma needs a finite positive argument");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * 691.0 / 32760)))));
  return acc + std::log(x) - 0.5 * inv - series;
}

std::size_t count_within(std::span<const double> sorted, double c, double eps) {
  auto lo = std::partition_point(sorted.begin(), sorted.end(),
                                 [&](double v) { return v - c < -eps; });
  auto hi = std::partition_point(lo, sorted.end(), [&](double v) { return v - c <= eps; });
  return static_cast<std::size_t>(hi - lo);
}

namespace {

void check_inputs(std::span<const double> x, std::span<const double> y, int k) {
  if (x.size() != y.size()) throw ContractError("x and y lengths differ");
  if (k < 1) throw ConfigError("k must be positive");
  if (x.size() <= static_cast<std::size_t>(k))
    throw InsufficientSamplesError("need more than k=" + std::to_string(k) + " samples, got " +
                                   std::to_string(x.size()));
}

double population_sd(std::span<const double> v) {
  double mean = 0.0;
  for (double a : v) mean += a;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double a : v) ss += (a - mean) * (a - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace

std::vector<PointStat> knn_stats(std::span<const double> x, std::span<const double> y, int k) {
  check_inputs(x, y, k);
  const std::size_t n = x.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return x[a] < x[b] || (x[a] == x[b] && a < b);
  });
  std::vector<double> xs(n), ys(y.begin(), y.end());
  for (std::size_t p = 0; p < n; ++p) xs[p] = x[order[p]];
  std::sort(ys.begin(), ys.end());

  std::vector<PointStat> out(n);
  std::vector<std::pair<double, std::uint32_t>> best;
  best.reserve(static_cast<std::size_t>(k) + 1);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::uint32_t i = order[pos];
    const double xi = x[i], yi = y[i];
    best.clear();
    std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(pos) - 1;
    std::size_t hi = pos + 1;
    while (true) {
      const double gl = lo >= 0 ? xi - xs[static_cast<std::size_t>(lo)] : inf;
      const double gh = hi < n ? xs[hi] - xi : inf;
      const double g = std::min(gl, gh);
      if (g == inf) break;
      if (best.size() == static_cast<std::size_t>(k) && g > best.back().first) break;
      std::uint32_t j;
      if (gl <= gh) {
        j = order[static_cast<std::size_t>(lo--)];
      } else {
        j = order[hi++];
      }
      std::pair<double, std::uint32_t> cand{max_norm(xi, yi, x[j], y[j]), j};
      if (best.size() < static_cast<std::size_t>(k)) {
        best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
      } else if (cand < best.back()) {
        best.pop_back();
        best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
      }
    }
    PointStat& s = out[i];
    s.radius = best.back().first;
    for (const auto& [d, j] : best) {
      s.eps_x = std::max(s.eps_x, std::fabs(x[j] - xi));
      s.eps_y = std::max(s.eps_y, std::fabs(y[j] - yi));
    }
    s.n_x = static_cast<std::uint32_t>(count_within(xs, xi, s.eps_x) - 1);
    s.n_y = static_cast<std::uint32_t>(count_within(ys, yi, s.eps_y) - 1);
  }
  return out;
}

MiEstimate assemble_estimate(std::span<const PointStat> stats, std::span<const double> x,
                             std::span<const double> y, int k, CountConvention conv) {
  const std::size_t n = stats.size();
  const double offset = conv == CountConvention::kPlusOne ? 1.0 : 0.0;
  double psi_sum = 0.0;
  double log_sum = 0.0;
  for (const PointStat& s : stats) {
    psi_sum += digamma(s.n_x + offset) + digamma(s.n_y + offset);
    log_sum += std::log(2.0 * std::max(s.radius, 1e-300));
  }
  const double dn = static_cast<double>(n);
  MiEstimate e;
  e.n = n;
  e.k = k;
  e.raw_mi = digamma(k) - 1.0 / k - psi_sum / dn + digamma(dn);
  e.mi_nats = std::max(0.0, e.raw_mi);

  const double sx = population_sd(x);
  const double sy = population_sd(y);
  if (sx > 0.0 && sy > 0.0) {
    const double h = digamma(dn) - digamma(k) + 2.0 * log_sum / dn;
    e.entropy_nats = h - std::log(sx) - std::log(sy);
  } else {
    e.entropy_nats = 0.0;
  }
  if (e.entropy_nats <= kEntropyFloor) {
    e.degenerate = true;
    e.normalized = e.mi_nats > kMiFloor ? 1.0 : 0.0;
  } else {
    e.normalized = std::clamp(e.mi_nats / e.entropy_nats, 0.0, 1.0);
  }
  return e;
}

MiEstimate estimate_mi(std::span<const double> x, std::span<const double> y, int k,
                       CountConvention conv) {
  const auto stats = knn_stats(x, y, k);
  return assemble_estimate(stats, x, y, k, conv);
}

MiEstimate estimate_mi(const TimeSeriesPair& pair, int k, CountConvention conv) {
  return estimate_mi(pair.x(), pair.y(), k, conv);
}

MiEstimate normalized_mi(std::span<const double> x, std::span<const double> y, int k,
                         CountConvention conv) {
  return estimate_mi(x, y, k, conv);
}

MiEstimate normalized_mi(const TimeSeriesPair& pair, int k, CountConvention conv) {
  return estimate_mi(pair.x(), pair.y(), k, conv);
}

double estimate_entropy(std::span<const double> x, std::span<const double> y, int k) {
  if (x.size() < 2) throw InsufficientSamplesError("entropy needs at least 2 samples");
  const int kk = std::min<int>(k, static_cast<int>(x.size()) - 1);
  bool identical = true;
  for (std::size_t i = 1; i < x.size() && identical; ++i)
    identical = x[i] == x[0] && y[i] == y[0];
  if (identical) throw DegenerateDataError("all points identical; entropy undefined");
  const auto stats = knn_stats(x, y, kk);
  double log_sum = 0.0;
  for (const PointStat& s : stats) log_sum += std::log(2.0 * std::max(s.radius, 1e-300));
  const double dn = static_cast<double>(x.size());
  return digamma(dn) - digamma(kk) + 2.0 * log_sum / dn;
}

double estimate_entropy(const TimeSeriesPair& pair, int k) {
  return estimate_entropy(pair.x(), pair.y(), k);
}

void detie(std::vector<double>& v, std::uint64_t seed) {
  if (v.empty()) return;
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double range = *mx - *mn;
  const double zero_scale = range > 0.0 ? 1e-10 * range : 1e-10;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> xi(-1.0, 1.0);
  for (double& a : v) {
    const double u = xi(rng);
    a += a != 0.0 ? 1e-10 * u * std::fabs(a) : zero_scale * u;
  }
}

TimeSeriesPair detie(const TimeSeriesPair& pair, std::uint64_t seed) {
  std::vector<double> x(pair.x().begin(), pair.x().end());
  std::vector<double> y(pair.y().begin(), pair.y().end());
  detie(x, seed);
  detie(y, seed ^ 0x9e3779b97f4a7c15ull);
  return TimeSeriesPair(std::move(x), std::move(y), pair.timestamps());
}

}  // namespace sycos
