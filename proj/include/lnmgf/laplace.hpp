#pragma once

// Lambert-W closed form for the lognormal MGF.
//
// With a = -theta sigma^2 e^mu and W = W0(a),
//
//   M(theta) ~ exp(-(W^2 + 2W) / (2 sigma^2)) / sqrt(1 + W).
//
// The approximation replaces e^u - 1 - u by u^2/2 around the saddle point.
// The exact value is exp(-(W^2 + 2W) / (2 sigma^2)) * E[exp(-(W / sigma^2)(e^{sigma Z} - 1 - sigma Z))],
// so the ratio I(theta) = sqrt(1 + W) * E[...] is the correction factor. It is
// available through LaplaceConfig::exact_correction and is evaluated by
// thin-tile integration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "lnmgf/errors.hpp"
#include "lnmgf/estimate.hpp"
#include "lnmgf/gaussian.hpp"
#include "lnmgf/thin_tile.hpp"

namespace lnmgf {

struct LambertResult {
  double w = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;  // |w e^w - x|
};

namespace detail {

/// The double nearest -1/e; the lower end of the principal branch.
inline constexpr double kBranchPoint = -0.36787944117144233;
inline constexpr double kE = 2.718281828459045;
inline constexpr double kELow = 1.4456468917292502e-16;  // e - kE

/// sqrt(2 (1 + e x)) with e split in two parts.
inline double branch_distance(double x) {
  const double q = std::fma(x, kE, 1.0) + x * kELow;
  return std::sqrt(2.0 * std::max(q, 0.0));
}

inline double branch_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
}

inline double lambert_initial(double x) {
  if (x < -0.32) return branch_series(branch_distance(x));
  if (x < 3.0) return std::log1p(x);
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace detail

/// Principal branch of w e^w = x by Halley iteration.
inline LambertResult lambert_w0(double x) {
  if (std::isnan(x) || x < detail::kBranchPoint) {
    throw DomainError("lambert_w0: argument " + std::to_string(x) + " is below -1/e");
  }
  if (std::isinf(x)) throw DomainError("lambert_w0: argument must be finite");

  LambertResult r;
  if (x == 0.0) return r;
  if (x == detail::kBranchPoint) {
    r.w = -1.0;
    r.residual = std::abs(-std::exp(-1.0) - x);
    return r;
  }

  const double tol = 1e-12 * std::max(1.0, std::abs(x));
  if (x < -0.36) {
    const double p = detail::branch_distance(x);
    if (p < 1e-3) {
      r.w = detail::branch_series(p);
      r.residual = std::abs(r.w * std::exp(r.w) - x);
      return r;
    }
  }
  constexpr double kEps = 2.220446049250313e-16;
  double w = detail::lambert_initial(x);
  for (std::size_t i = 1; i <= 50; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    double step = 0.0;
    if (f != 0.0 && wp1 != 0.0) {
      step = f / (ew * wp1 - 0.5 * (w + 2.0) * f / wp1);
    }
    w -= step;
    r.iterations = i;
    if (std::abs(step) <= 4.0 * kEps * (1.0 + std::abs(w))) break;
  }
  w = std::max(w, -1.0);
  r.w = w;
  r.residual = std::abs(w * std::exp(w) - x);
  if (!(r.residual <= tol)) {
    throw ConvergenceError("lambert_w0: residual " + std::to_string(r.residual) + " above " +
                           std::to_string(tol) + " at x = " + std::to_string(x));
  }
  return r;
}

struct LaplaceConfig {
  /// Multiply the closed form by the exact correction factor I(theta).
  bool exact_correction = false;
  /// Grid used for I(theta); tail tiles keep the tails of the integrand.
  TileGridConfig correction_grid{80'000, 1e-14, true, 0.25};
};

inline MgfEstimate mgf_asmussen(const MgfQuery& q, const LaplaceConfig& cfg = {}) {
  const double s2 = q.sigma * q.sigma;
  const double a = -q.theta * s2 * detail::checked_exp(q.mu, "mgf_asmussen");
  if (!(a >= detail::kBranchPoint)) {
    throw DomainError("mgf_asmussen: Lambert argument " + std::to_string(a) +
                      " is below -1/e; theta is beyond the closed form's domain");
  }
  const LambertResult lw = lambert_w0(a);
  const double w = lw.w;
  if (!(1.0 + w > 0.0)) {
    throw DomainError("mgf_asmussen: 1 + W(a) must be positive");
  }

  MgfEstimate out;
  out.method = Method::laplace_w;
  const double exponent = -(w * w + 2.0 * w) / (2.0 * s2);
  out.value = detail::checked_exp(exponent, "mgf_asmussen") / std::sqrt(1.0 + w);
  out.diagnostics = {{"lambert_w", w},
                     {"lambert_iterations", static_cast<double>(lw.iterations)},
                     {"lambert_residual", lw.residual}};

  if (cfg.exact_correction && w != 0.0) {
    const double k = w / s2;
    const TileGrid g = build_grid(GaussianParams{0.0, q.sigma}, cfg.correction_grid);
    const Expectation e = expectation([k](double x) { return std::exp(-k * (std::expm1(x) - x)); }, g);
    const double correction = std::sqrt(1.0 + w) * e.value;
    out.value *= correction;
    out.diagnostics["correction"] = correction;
    out.diagnostics["coverage"] = e.coverage;
  }
  return out;
}

}  // namespace lnmgf
