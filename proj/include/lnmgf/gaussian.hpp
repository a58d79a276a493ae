#pragma once

// Gaussian and lognormal primitives shared by every MGF method.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "lnmgf/errors.hpp"

namespace lnmgf {

/// Location/scale of a normal law N(mu, sigma^2).
struct GaussianParams {
  double mu = 0.0;
  double sigma = 1.0;

  GaussianParams() = default;
  GaussianParams(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
      throw DomainError("GaussianParams: need finite mu and sigma > 0, got sigma = " +
                        std::to_string(sigma));
    }
  }
};

/// Seed of a reproducible random stream.
struct RngSeed {
  std::uint64_t value = 0;
};

namespace detail {

inline constexpr double kLogMax = 709.782712893384;  // log(DBL_MAX)

inline double checked_exp(double exponent, const char* where) {
  if (exponent > kLogMax) {
    throw OverflowError(std::string(where) + ": exponent " + std::to_string(exponent) +
                        " overflows double");
  }
  return std::exp(exponent);
}

// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Seed of sub-stream `index` of `seed`. Pure function of its arguments, so
/// partitioned work reproduces the same draws regardless of scheduling.
constexpr RngSeed derive_seed(RngSeed seed, std::uint64_t index) noexcept {
  return RngSeed{detail::mix64(detail::mix64(seed.value) ^ detail::mix64(~index))};
}

inline double pdf(double x, const GaussianParams& p) {
  const double z = (x - p.mu) / p.sigma;
  return std::exp(-0.5 * z * z) / (p.sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// Standard normal density.
inline double pdf_std(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

/// Phi(x) via erfc.
inline double cdf_std(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace detail {

// Acklam's rational approximation (relative error ~1.2e-9), lower half only.
inline double quantile_initial(double p) {
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace detail

/// Phi^{-1}(p) for p in (0, 1). Rational start, then Halley polish against
/// cdf_std. Works on the lower half so tiny tail probabilities keep their
/// relative accuracy; the upper half follows by symmetry (1 - p is exact there).
inline double inverse_cdf_std(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("inverse_cdf_std: p must lie in (0, 1), got " + std::to_string(p));
  }
  if (p > 0.5) return -inverse_cdf_std(1.0 - p);
  if (p == 0.5) return 0.0;

  double z = detail::quantile_initial(p);
  for (int iter = 0; iter < 3; ++iter) {
    const double err = cdf_std(z) - p;
    const double u = err * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * z * z);
    const double step = u / (1.0 + 0.5 * z * u);
    z -= step;
    if (std::abs(step) <= 1e-15 * std::abs(z)) break;
  }
  return z;
}

/// Standard-normal variates from a 64-bit Mersenne Twister using the
/// Marsaglia polar method. Both the engine and the transform are fixed, so a
/// seed reproduces the same stream on every platform (std::normal_distribution
/// makes no such promise).
class NormalStream {
 public:
  explicit NormalStream(RngSeed seed) : engine_(seed.value) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

 private:
  // 53 random bits -> [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// One draw from N(mu, sigma^2); advances `stream`.
inline double sample(const GaussianParams& p, NormalStream& stream) { return p.mu + p.sigma * stream(); }

/// E[e^x] for x ~ N(mu, sigma^2).
inline double lognormal_mean(const GaussianParams& p) {
  return detail::checked_exp(p.mu + 0.5 * p.sigma * p.sigma, "lognormal_mean");
}

/// Var[e^x] for x ~ N(mu, sigma^2).
inline double lognormal_variance(const GaussianParams& p) {
  const double s2 = p.sigma * p.sigma;
  return std::expm1(s2) * detail::checked_exp(2.0 * p.mu + s2, "lognormal_variance");
}

}  // namespace lnmgf
