#pragma once

// Reference values computed independently of the library: adaptive
// Gauss-Kronrod quadrature and Boost special functions.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/lambert_w.hpp>

namespace oracle {

/// E[f(X)] for X ~ N(mu, sigma^2), integrating over |z| <= 14 in standard units.
template <typename F>
double gaussian_expectation(F f, double mu, double sigma) {
  auto g = [&](double z) { return f(mu + sigma * z) * std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -14.0, 14.0, 20, 1e-15);
}

/// E[exp(theta e^X)] by quadrature.
inline double mgf(double mu, double sigma, double theta) {
  return gaussian_expectation([theta](double x) { return std::exp(theta * std::exp(x)); }, mu, sigma);
}

inline double lambert_w0(double x) { return boost::math::lambert_w0(x); }

/// The closed form with the Boost Lambert function.
inline double closed_form(double mu, double sigma, double theta) {
  const double w = lambert_w0(-theta * sigma * sigma * std::exp(mu));
  return std::exp(-(w * w + 2.0 * w) / (2.0 * sigma * sigma)) / std::sqrt(1.0 + w);
}

}  // namespace oracle
