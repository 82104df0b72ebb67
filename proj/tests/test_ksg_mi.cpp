#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "sycos/ksg_mi.hpp"

using namespace sycos;

namespace {

// Asymptotic digamma series, evaluated independently of the library.
double digamma_series(double x) {
  const double x2 = x * x;
  return std::log(x) - 1.0 / (2 * x) - 1.0 / (12 * x2) + 1.0 / (120 * x2 * x2) -
         1.0 / (252 * x2 * x2 * x2) + 1.0 / (240 * x2 * x2 * x2 * x2);
}

}  // namespace

TEST(Digamma, OneMatchesShiftedSeries) {
  double shifted = digamma_series(21.0);
  for (int j = 1; j <= 20; ++j) shifted -= 1.0 / j;
  EXPECT_NEAR(digamma(1.0), shifted, 1e-12);
  EXPECT_NEAR(digamma(1.0), -0.5772156649015329, 1e-12);
}

TEST(Digamma, RecurrenceStep) { EXPECT_DOUBLE_EQ(digamma(2.0), digamma(1.0) + 1.0); }

TEST(Digamma, LargeArgumentMatchesSeries) { EXPECT_NEAR(digamma(100.0), digamma_series(100.0), 1e-10); }

TEST(Digamma, HalfClosedForm) { EXPECT_NEAR(digamma(0.5), -0.5772156649015329 - 2 * std::log(2.0), 1e-10); }

TEST(Digamma, IntegersMatchHarmonicOracle) {
  for (std::uint64_t n : {1u, 2u, 3u, 7u, 10u, 11u, 57u, 1000u})
    EXPECT_NEAR(digamma(static_cast<double>(n)), oracle::digamma_int(n), 1e-11) << n;
}

TEST(Digamma, RejectsNonPositive) {
  EXPECT_THROW(digamma(0.0), DomainError);
  EXPECT_THROW(digamma(-1.5), DomainError);
  EXPECT_THROW(digamma(std::nan("")), DomainError);
}

TEST(EstimateMi, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto [x, y] = oracle::gaussian_pair(300, 0.5, seed);
    for (int k : {1, 3, 4, 7}) {
      const auto want = oracle::brute_ksg(x, y, k);
      const auto got = estimate_mi(x, y, k);
      EXPECT_NEAR(got.raw_mi, want.mi, 1e-10) << "seed " << seed << " k " << k;
      const auto stats = knn_stats(x, y, k);
      for (std::size_t i = 0; i < x.size(); ++i) {
        ASSERT_EQ(stats[i].n_x, want.n_x[i]);
        ASSERT_EQ(stats[i].n_y, want.n_y[i]);
        ASSERT_EQ(stats[i].radius, want.radius[i]);
      }
    }
  }
}

TEST(EstimateMi, TiedValuesMatchOracle) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(0, 6);
  std::vector<double> x(200), y(200);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = d(rng);
    y[i] = d(rng) + (x[i] > 3 ? 1 : 0);
  }
  const auto want = oracle::brute_ksg(x, y, 4);
  EXPECT_NEAR(estimate_mi(x, y, 4).raw_mi, want.mi, 1e-10);
}

TEST(EstimateMi, IndependentUniformsStayNearZero) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto x = oracle::uniform(1000, 0.0, 1.0, 2 * seed + 1);
    const auto y = oracle::uniform(1000, 0.0, 1.0, 2 * seed + 2);
    worst = std::max(worst, std::fabs(estimate_mi(x, y, 4).raw_mi));
  }
  EXPECT_LT(worst, 0.05);
}

TEST(EstimateMi, GaussianRhoPointNine) {
  auto [x, y] = oracle::gaussian_pair(2000, 0.9, 17);
  EXPECT_NEAR(estimate_mi(x, y, 4).mi_nats, oracle::gaussian_mi(0.9), 0.10);
}

TEST(EstimateMi, IdenticalSeriesAfterJitter) {
  std::vector<double> x = oracle::uniform(500, 0.0, 1.0, 3);
  std::vector<double> y = x;
  detie(x, 1);
  detie(y, 2);
  EXPECT_GE(estimate_mi(x, y, 4).normalized, 0.9);
}

TEST(EstimateMi, RequiresMoreThanKSamples) {
  std::vector<double> x{1, 2, 3, 4}, y{4, 3, 2, 1};
  EXPECT_THROW(estimate_mi(x, y, 4), InsufficientSamplesError);
  EXPECT_NO_THROW(estimate_mi(x, y, 3));
}

TEST(EstimateMi, PlusOneConventionIsSelectable) {
  auto [x, y] = oracle::gaussian_pair(500, 0.6, 5);
  const auto plain = estimate_mi(x, y, 4, CountConvention::kPlain);
  const auto plus = estimate_mi(x, y, 4, CountConvention::kPlusOne);
  EXPECT_GT(plus.raw_mi, plain.raw_mi - 1.0);
  EXPECT_NE(plus.raw_mi, plain.raw_mi);
}

TEST(EstimateEntropy, UnitSquare) {
  const auto x = oracle::uniform(2000, 0.0, 1.0, 11);
  const auto y = oracle::uniform(2000, 0.0, 1.0, 12);
  EXPECT_NEAR(estimate_entropy(x, y), 0.0, 0.15);
}

TEST(EstimateEntropy, ScaledSquare) {
  const double e = std::exp(1.0);
  const auto x = oracle::uniform(2000, 0.0, e, 13);
  const auto y = oracle::uniform(2000, 0.0, e, 14);
  EXPECT_NEAR(estimate_entropy(x, y), 2.0, 0.15);
}

TEST(EstimateEntropy, ConstantSeriesIsDegenerate) {
  std::vector<double> c(50, 3.0);
  EXPECT_THROW(estimate_entropy(c, c), DegenerateDataError);
}

TEST(NormalizedMi, IndependentPairIsLow) {
  const auto x = oracle::uniform(1000, 0.0, 1.0, 21);
  const auto y = oracle::uniform(1000, 0.0, 1.0, 22);
  EXPECT_LT(normalized_mi(x, y, 4).normalized, 0.05);
}

TEST(NormalizedMi, DependentPairIsNearOne) {
  auto x = oracle::uniform(1000, 0.0, 10.0, 23);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 2.0 * x[i] + 1e-3 * std::sin(37.0 * i);
  EXPECT_GT(normalized_mi(x, y, 4).normalized, 0.95);
}

TEST(NormalizedMi, AlwaysWithinUnitInterval) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 10 + rng() % 300;
    std::vector<double> x(n), y(n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int mode = trial % 4;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = mode == 0 ? u(rng) : mode == 1 ? x[i] * x[i] : mode == 2 ? std::round(4 * u(rng)) : 5.0;
    }
    const auto e = normalized_mi(x, y, 4);
    EXPECT_GE(e.normalized, 0.0);
    EXPECT_LE(e.normalized, 1.0);
    EXPECT_GE(e.mi_nats, 0.0);
  }
}

TEST(NormalizedMi, ConstantCoordinateIsFlaggedDegenerate) {
  const auto x = oracle::uniform(100, 0.0, 1.0, 31);
  std::vector<double> y(100, 2.0);
  const auto e = normalized_mi(x, y, 4);
  EXPECT_TRUE(e.degenerate);
  EXPECT_TRUE(e.normalized == 0.0 || e.normalized == 1.0);
}

TEST(NormalizedMi, InvariantUnderCommonRescaling) {
  auto [x, y] = oracle::gaussian_pair(800, 0.7, 41);
  std::vector<double> xs(x.size()), ys(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xs[i] = 64.0 * x[i] - 5.0;
    ys[i] = 64.0 * y[i] + 3.0;
  }
  const auto a = normalized_mi(x, y, 4);
  const auto b = normalized_mi(xs, ys, 4);
  EXPECT_NEAR(a.raw_mi, b.raw_mi, 1e-9);
  EXPECT_NEAR(a.normalized, b.normalized, 1e-9);
}

TEST(NormalizedMi, ModerateAxisRescalingMovesLittle) {
  auto [x, y] = oracle::gaussian_pair(800, 0.7, 41);
  std::vector<double> xs(x.size()), ys(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xs[i] = 3.0 * x[i];
    ys[i] = y[i] / 3.0;
  }
  EXPECT_NEAR(normalized_mi(x, y, 4).normalized, normalized_mi(xs, ys, 4).normalized, 0.05);
}

TEST(MiProperties, MonotoneTransformInvariance) {
  std::vector<double> base, moved;
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    auto [x, y] = oracle::gaussian_pair(1000, 0.6, seed);
    base.push_back(estimate_mi(x, y, 4).raw_mi);
    for (double& v : x) v = std::exp(0.5 * v);
    for (double& v : y) v = v * v * v + v;
    moved.push_back(estimate_mi(x, y, 4).raw_mi);
  }
  // Standard error of the estimator: spread of its sampling distribution over seeds.
  const double se = oracle::stddev(base);
  for (std::size_t i = 0; i < base.size(); ++i)
    EXPECT_LT(std::fabs(moved[i] - base[i]), 3.0 * se) << "seed index " << i;
}

TEST(MiProperties, ErrorShrinksWithSampleSize) {
  std::vector<double> small, large;
  const double truth = oracle::gaussian_mi(0.6);
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    auto [x1, y1] = oracle::gaussian_pair(200, 0.6, seed);
    auto [x2, y2] = oracle::gaussian_pair(2000, 0.6, seed + 1000);
    small.push_back(std::fabs(estimate_mi(x1, y1, 4).raw_mi - truth));
    large.push_back(std::fabs(estimate_mi(x2, y2, 4).raw_mi - truth));
  }
  EXPECT_LT(oracle::median(large), oracle::median(small));
}

TEST(MiProperties, PermutationNull) {
  auto [x, y] = oracle::gaussian_pair(500, 0.9, 300);
  std::mt19937_64 rng(301);
  int below = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> ys = y;
    std::shuffle(ys.begin(), ys.end(), rng);
    if (normalized_mi(x, ys, 4).normalized < 0.2) ++below;
  }
  EXPECT_GE(below, 95);
}

TEST(Detie, DeterministicAndScaleAware) {
  std::vector<double> a{1e-20, 1e-20, 5.0, 5.0, 0.0, 1e20};
  std::vector<double> b = a;
  detie(a, 7);
  detie(b, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(a[0], a[1]);
  EXPECT_NE(a[2], a[3]);
  EXPECT_NEAR(a[0], 1e-20, 1e-29);
  EXPECT_NEAR(a[5], 1e20, 1e11);
}
