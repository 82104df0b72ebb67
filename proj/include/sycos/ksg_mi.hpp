#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sycos/core_types.hpp"

namespace sycos {

// How marginal counts enter the digamma sum.
enum class CountConvention {
  kPlain,    // psi(n_x) + psi(n_y)
  kPlusOne,  // psi(n_x + 1) + psi(n_y + 1)
};

struct MiEstimate {
  double mi_nats = 0.0;       // clamped at zero
  double raw_mi = 0.0;        // unclamped estimator output
  double entropy_nats = 0.0;  // standardized joint entropy used as normalizer
  double normalized = 0.0;    // in [0, 1]
  std::size_t n = 0;
  int k = 0;
  bool degenerate = false;
};

inline constexpr double kEntropyFloor = 1e-6;
inline constexpr double kMiFloor = 1e-6;

double digamma(double x);

// Max-norm distance with deterministic (distance, id) ordering.
inline double max_norm(double x0, double y0, double x1, double y1) {
  const double dx = x0 > x1 ? x0 - x1 : x1 - x0;
  const double dy = y0 > y1 ? y0 - y1 : y1 - y0;
  return dx > dy ? dx : dy;
}

// |v - c| <= eps, evaluated the same way everywhere counts are taken.
inline bool within(double v, double c, double eps) {
  const double d = v - c;
  return -eps <= d && d <= eps;
}

// Count of sorted values v with |v - c| <= eps.
std::size_t count_within(std::span<const double> sorted, double c, double eps);

// Per-point neighborhood facts shared by the scratch and incremental paths.
struct PointStat {
  double eps_x = 0.0;
  double eps_y = 0.0;
  double radius = 0.0;  // max-norm distance to the k-th neighbor
  std::uint32_t n_x = 0;
  std::uint32_t n_y = 0;
};

// Folds per-point stats (in point order) into an estimate.
MiEstimate assemble_estimate(std::span<const PointStat> stats, std::span<const double> x,
                             std::span<const double> y, int k, CountConvention conv);

// Computes per-point stats by a sweep over x-sorted points.
std::vector<PointStat> knn_stats(std::span<const double> x, std::span<const double> y, int k);

MiEstimate estimate_mi(std::span<const double> x, std::span<const double> y, int k,
                       CountConvention conv = CountConvention::kPlain);
MiEstimate estimate_mi(const TimeSeriesPair& pair, int k,
                       CountConvention conv = CountConvention::kPlain);

// Kozachenko-Leonenko joint entropy under the max norm, in nats.
double estimate_entropy(std::span<const double> x, std::span<const double> y, int k = 4);
double estimate_entropy(const TimeSeriesPair& pair, int k = 4);

// Same as estimate_mi; provided under the name used by the searches.
MiEstimate normalized_mi(std::span<const double> x, std::span<const double> y, int k,
                         CountConvention conv = CountConvention::kPlain);
MiEstimate normalized_mi(const TimeSeriesPair& pair, int k,
                         CountConvention conv = CountConvention::kPlain);

// Seeded relative jitter that breaks exact ties without changing scale.
void detie(std::vector<double>& v, std::uint64_t seed);
TimeSeriesPair detie(const TimeSeriesPair& pair, std::uint64_t seed);

}  // namespace sycos
