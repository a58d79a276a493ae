#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "lnmgf/stats.hpp"
#include "lnmgf/summation.hpp"

using namespace lnmgf;

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  for (double x : {1.0, 1e100, 1.0, -1e100}) s += x;
  EXPECT_EQ(s.value(), 2.0);
}

TEST(CompensatedSum, ManySmallTerms) {
  CompensatedSum s;
  double naive = 0.0;
  for (int i = 0; i < 10'000'000; ++i) {
    s += 0.1;
    naive += 0.1;
  }
  EXPECT_NEAR(s.value(), 1e6, 1e-9);
  EXPECT_GT(std::abs(naive - 1e6), 1e-6);
}

TEST(CompensatedSum, MergeMatchesSequentialWithinRounding) {
  CompensatedSum all, a, b;
  for (int i = 0; i < 1000; ++i) {
    const double x = 1.0 / (i + 1.0);
    all += x;
    (i < 500 ? a : b) += x;
  }
  a.merge(b);
  EXPECT_NEAR(a.value(), all.value(), 1e-15);
}

TEST(SampleMoments, SmallKnownSet) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const SampleMoments m = sample_moments(xs);
  EXPECT_EQ(m.n, 4u);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_DOUBLE_EQ(m.variance, 5.0 / 3.0);
  EXPECT_NEAR(m.skewness, 0.0, 1e-15);
  EXPECT_NEAR(m.excess_kurtosis, -1.36, 1e-14);
  EXPECT_DOUBLE_EQ(m.std_error_of_mean(), std::sqrt(5.0 / 12.0));
}

TEST(SampleMoments, DegenerateInputs) {
  EXPECT_EQ(sample_moments(std::vector<double>{}).n, 0u);
  const SampleMoments one = sample_moments(std::vector<double>{3.0});
  EXPECT_EQ(one.mean, 3.0);
  EXPECT_EQ(one.variance, 0.0);
  const SampleMoments flat = sample_moments(std::vector<double>(10, 2.0));
  EXPECT_EQ(flat.variance, 0.0);
  EXPECT_EQ(flat.skewness, 0.0);
}
