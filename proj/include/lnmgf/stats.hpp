#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "lnmgf/summation.hpp"

namespace lnmgf {

/// Sample moments of an ensemble. Variance is the unbiased (n - 1) estimator;
/// skewness and excess kurtosis are the plain moment ratios.
struct SampleMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;

  double std_error_of_mean() const { return std::sqrt(variance / static_cast<double>(n)); }
  /// Standard error of the sample variance under a Gaussian law.
  double std_error_of_variance() const {
    return variance * std::sqrt(2.0 / static_cast<double>(n - 1));
  }
};

inline SampleMoments sample_moments(std::span<const double> xs) {
  SampleMoments out;
  out.n = xs.size();
  if (xs.empty()) return out;

  CompensatedSum sum;
  for (double x : xs) sum += x;
  out.mean = sum.value() / static_cast<double>(out.n);
  if (out.n < 2) return out;

  CompensatedSum m2, m3, m4;
  for (double x : xs) {
    const double d = x - out.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(out.n);
  const double c2 = m2.value() / n;
  out.variance = m2.value() / (n - 1.0);
  if (c2 > 0.0) {
    out.skewness = (m3.value() / n) / std::pow(c2, 1.5);
    out.excess_kurtosis = (m4.value() / n) / (c2 * c2) - 3.0;
  }
  return out;
}

}  // namespace lnmgf
