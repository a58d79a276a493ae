#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "lnmgf/gaussian.hpp"
#include "lnmgf/thin_tile.hpp"

using namespace lnmgf;

TEST(GaussianParams, RejectsInvalidScale) {
  EXPECT_THROW(GaussianParams(0.0, 0.0), DomainError);
  EXPECT_THROW(GaussianParams(0.0, -1.0), DomainError);
  EXPECT_THROW(GaussianParams(NAN, 1.0), DomainError);
  EXPECT_THROW(GaussianParams(0.0, INFINITY), DomainError);
  EXPECT_NO_THROW(GaussianParams(-3.0, 1e-9));
}

TEST(Pdf, ModeValue) { EXPECT_DOUBLE_EQ(pdf(0.0, {0.0, 1.0}), 1.0 / std::sqrt(2.0 * std::numbers::pi)); }

TEST(Pdf, SymmetricAboutMode) {
  const GaussianParams p{1.7, 0.3};
  for (double d : {0.0, 0.1, 0.7, 2.5, 9.0}) EXPECT_EQ(pdf(p.mu + d, p), pdf(p.mu - d, p)) << d;
}

TEST(Pdf, HighPrecisionValue) {
  // mpmath: exp(-1/8) / (2 sqrt(2 pi))
  EXPECT_NEAR(pdf(1.0, {0.0, 2.0}), 0.17603266338214974, 1e-16);
}

TEST(CdfStd, Basics) {
  EXPECT_EQ(cdf_std(0.0), 0.5);
  for (double x = -9.0; x <= 9.0; x += 0.37) EXPECT_NEAR(cdf_std(x) + cdf_std(-x), 1.0, 2e-16) << x;
  // mpmath: ncdf(1.959964)
  EXPECT_NEAR(cdf_std(1.959964), 0.9750000009035576, 1e-15);
}

TEST(CdfStd, AbsoluteAccuracyAgainstBoost) {
  const boost::math::normal_distribution<double> n;
  for (double x = -8.0; x <= 8.0; x += 1.0 / 64.0) {
    EXPECT_NEAR(cdf_std(x), boost::math::cdf(n, x), 1e-14) << x;
  }
}

TEST(InverseCdfStd, Examples) {
  EXPECT_EQ(inverse_cdf_std(0.5), 0.0);
  EXPECT_NEAR(inverse_cdf_std(cdf_std(1.234)), 1.234, 1e-10);
  // mpmath: findroot(ncdf(z) - 0.975)
  EXPECT_NEAR(inverse_cdf_std(0.975), 1.959963984540054, 1e-12);
}

TEST(InverseCdfStd, RejectsOutsideUnitInterval) {
  for (double p : {0.0, 1.0, -0.1, 1.5, static_cast<double>(NAN)}) {
    EXPECT_THROW(inverse_cdf_std(p), DomainError) << p;
  }
}

TEST(InverseCdfStd, RoundTripOverBothTails) {
  std::vector<double> ps;
  for (double e = -12.0; e <= std::log10(0.5); e += 0.01) {
    ps.push_back(std::pow(10.0, e));
    ps.push_back(1.0 - std::pow(10.0, e));
  }
  for (double p : ps) {
    if (!(p > 1e-12 && p < 1.0 - 1e-12)) continue;
    EXPECT_LE(std::abs(cdf_std(inverse_cdf_std(p)) - p), 1e-12) << p;
  }
}

TEST(InverseCdfStd, AgreesWithBoostQuantile) {
  const boost::math::normal_distribution<double> n;
  for (double p : {1e-300, 1e-100, 1e-20, 1e-9, 0.001, 0.02425, 0.3, 0.49999, 0.75, 0.999}) {
    const double want = boost::math::quantile(n, p);
    EXPECT_NEAR(inverse_cdf_std(p), want, 1e-13 * std::max(1.0, std::abs(want))) << p;
  }
}

TEST(Monotonicity, CdfAndQuantileStrictlyIncrease) {
  constexpr int kPoints = 10'000;
  double prev = -1.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = -8.0 + 16.0 * i / (kPoints - 1);
    const double c = cdf_std(x);
    // Above zero the cdf saturates at 1 in double precision.
    if (x <= 0.0) {
      EXPECT_GT(c, prev) << x;
    } else {
      EXPECT_GE(c, prev) << x;
    }
    prev = c;
  }
  prev = -INFINITY;
  for (int i = 1; i <= kPoints; ++i) {
    const double p = static_cast<double>(i) / (kPoints + 1);
    const double z = inverse_cdf_std(p);
    EXPECT_GT(z, prev) << p;
    prev = z;
  }
}

TEST(Sampling, MomentsWithinLawOfLargeNumbersBounds) {
  constexpr int n = 1'000'000;
  NormalStream s1(RngSeed{7});
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample({0.0, 1.0}, s1);
  EXPECT_NEAR(sum / n, 0.0, 0.004);

  NormalStream s2(RngSeed{8});
  std::vector<double> xs(n);
  for (auto& x : xs) x = sample({0.0, 2.0}, s2);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  EXPECT_NEAR(ss / (n - 1), 4.0, 3.0 * std::sqrt(2.0 / n) * 4.0);
}

TEST(Sampling, IdenticalSeedsGiveIdenticalStreams) {
  NormalStream a(RngSeed{42}), b(RngSeed{42}), c(RngSeed{43});
  int differ = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = a();
    EXPECT_EQ(x, b());
    differ += (x != c());
  }
  EXPECT_GT(differ, 90);
}

TEST(Sampling, DerivedSeedsAreDistinct) {
  const RngSeed root{123};
  EXPECT_NE(derive_seed(root, 0).value, derive_seed(root, 1).value);
  EXPECT_NE(derive_seed(root, 0).value, derive_seed(RngSeed{124}, 0).value);
  EXPECT_EQ(derive_seed(root, 5).value, derive_seed(root, 5).value);
}

TEST(Lognormal, MeanClosedForms) {
  EXPECT_NEAR(lognormal_mean({0.0, 1e-8}), 1.0, 1e-15);
  EXPECT_NEAR(lognormal_mean({0.0, 1.0}), 1.6487212707001282, 1e-15);
  EXPECT_NEAR(lognormal_mean({1.0, 0.5}), 3.0802168489180310, 1e-14);
}

TEST(Lognormal, VarianceClosedForms) {
  EXPECT_NEAR(lognormal_variance({0.0, 1e-8}), 0.0, 1e-15);
  EXPECT_NEAR(lognormal_variance({0.0, 1.0}), (std::numbers::e - 1.0) * std::numbers::e, 1e-14);
  EXPECT_NEAR(lognormal_variance({0.0, 0.1}), std::expm1(0.01) * std::exp(0.01), 1e-17);
  EXPECT_NEAR(lognormal_variance({0.0, 0.1}), 0.0101512, 1e-7);
}

TEST(Lognormal, OverflowIsReported) {
  EXPECT_THROW(lognormal_mean({800.0, 1.0}), OverflowError);
  EXPECT_THROW(lognormal_variance({400.0, 1.0}), OverflowError);
}

TEST(Lognormal, AgreesWithThinTileExpectations) {
  TileGridConfig cfg;
  cfg.tail_tiles = true;
  for (const GaussianParams p : {GaussianParams{0.0, 1.0}, GaussianParams{0.0, 0.1}, GaussianParams{1.0, 0.5}}) {
    const TileGrid g = build_grid(p, cfg);
    const double mean = lognormal_mean(p);
    const double var = lognormal_variance(p);
    const double m = expectation([](double x) { return std::exp(x); }, g).value;
    const double v = expectation([mean](double x) { return (std::exp(x) - mean) * (std::exp(x) - mean); }, g).value;
    EXPECT_NEAR(m / mean, 1.0, 1e-5);
    EXPECT_NEAR(v / var, 1.0, 1e-3);
  }
}
