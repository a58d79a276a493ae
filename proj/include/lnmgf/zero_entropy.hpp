#pragma once

// Stochastic (zero-entropy) route to the lognormal MGF.
//
// For theta != 0 the process y_t = ln(sign(theta) ln f~_t) follows
//
//   dy = (mu + sigma^2/2 + sign(theta) sigma^2/2 e^y) dt + sigma dW,  y_0 = ln|theta|,
//
// and is taken to be Gaussian N(m_t, v_t). Its mean and variance obey a pair
// of coupled ODEs which are integrated with explicit Euler on [0, 1]; the MGF
// estimate is exp(sign(theta) e^{m_1}). simulate_paths() runs the SDE itself
// with Euler-Maruyama, which serves as an independent check on (m_1, v_1).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lnmgf/errors.hpp"
#include "lnmgf/estimate.hpp"
#include "lnmgf/gaussian.hpp"

namespace lnmgf {

struct ZeroEntropyConfig {
  std::size_t steps = 2000;
  /// Scale the non-homogeneous drift term by gamma = sqrt(1 + sigma^2/2).
  bool gamma_enabled = true;
  /// Add the single covariance term sigma^5 sqrt(v) e^{2m+v} / 2^{3/2} to the variance rate.
  bool upsilon_extra_term = false;
  /// Largest exponent allowed before the integration is declared divergent.
  double overflow_guard = 700.0;
  /// Use v' = sigma^2 on the first step (the t -> 0 limit of the variance
  /// rate). When false the first step has v' = 0, so a zero initial variance
  /// stays zero for the whole run.
  bool initial_variance_slope = true;
  /// Abort with NegativeVariance when more steps than this needed clamping.
  std::optional<std::size_t> max_clamps;

  void validate() const {
    if (steps < 10) throw DomainError("ZeroEntropyConfig: steps must be >= 10");
    if (!(overflow_guard > 0.0 && overflow_guard <= detail::kLogMax)) {
      throw DomainError("ZeroEntropyConfig: overflow_guard must lie in (0, 709.78]");
    }
  }
};

/// (t, m_t, v_t) of the Gaussian law of y_t.
struct OdeState {
  double t = 0.0;
  double m = 0.0;
  double v = 0.0;
};

struct OdeSolution {
  OdeState state;                 // at t = 1
  std::size_t clamped_steps = 0;  // steps whose variance radicand was negative
};

inline double gamma_factor(const MgfQuery& q, const ZeroEntropyConfig& cfg) {
  return cfg.gamma_enabled ? std::sqrt(1.0 + 0.5 * q.sigma * q.sigma) : 1.0;
}

namespace detail {

inline void guard_exponent(double exponent, double guard, const char* where) {
  if (!(exponent <= guard)) {
    throw OverflowError(std::string(where) + ": exponent " + std::to_string(exponent) +
                        " exceeds guard " + std::to_string(guard));
  }
}

}  // namespace detail

/// dm/dt = mu + sigma^2/2 + sign(theta) sigma^2/2 e^{m + v/2}.
inline double drift_m(const OdeState& s, const MgfQuery& q, double overflow_guard = 700.0) {
  if (q.theta == 0.0) throw DomainError("drift_m: theta must be non-zero");
  const double e = s.m + 0.5 * s.v;
  detail::guard_exponent(e, overflow_guard, "drift_m");
  const double half_s2 = 0.5 * q.sigma * q.sigma;
  return q.mu + half_s2 + q.sign() * half_s2 * std::exp(e);
}

/// Expression under the square root of the variance rate.
inline double variance_radicand(const OdeState& s, const MgfQuery& q, const ZeroEntropyConfig& cfg) {
  if (q.theta == 0.0) throw DomainError("drift_v: theta must be non-zero");
  if (!(s.t > 0.0)) throw DomainError("drift_v: t must be > 0 (the first step is seeded separately)");
  if (s.v < 0.0) throw DomainError("drift_v: v must be >= 0");

  const double m = s.m, v = s.v, t = s.t;
  detail::guard_exponent(2.0 * m + v, cfg.overflow_guard, "drift_v");
  detail::guard_exponent(v, cfg.overflow_guard, "drift_v");

  const double sigma = q.sigma;
  const double s2 = sigma * sigma;
  const double g = gamma_factor(q, cfg);

  const double diffusion = v * s2 / t;
  const double nonlinear = v * s2 * s2 * g * g * std::expm1(v) * std::exp(2.0 * m + v);
  const double cross = q.sign() * 2.0 * s2 * sigma / std::sqrt(t) * g * v * std::sqrt(v) *
                       std::exp(m + 0.5 * v);
  double r = diffusion + nonlinear + cross;
  if (cfg.upsilon_extra_term) {
    r += s2 * s2 * sigma * std::sqrt(v) * std::exp(2.0 * m + v) / (2.0 * std::sqrt(2.0));
  }
  return r;
}

/// dv/dt. Throws NegativeRadicand where the rate is undefined.
inline double drift_v(const OdeState& s, const MgfQuery& q, const ZeroEntropyConfig& cfg = {}) {
  const double r = variance_radicand(s, q, cfg);
  if (r < 0.0) throw NegativeRadicand("drift_v: negative radicand " + std::to_string(r), r);
  return std::sqrt(r);
}

/// Explicit Euler over t in [0, 1]. `observer(i, state)` sees every grid
/// point, including the initial state (i = 0) and the final one (i = steps).
template <typename Observer>
OdeSolution integrate(const MgfQuery& q, const ZeroEntropyConfig& cfg, Observer&& observer) {
  cfg.validate();
  if (q.theta == 0.0) throw DomainError("integrate: theta must be non-zero");

  const double s2 = q.sigma * q.sigma;
  const double dt = 1.0 / static_cast<double>(cfg.steps);

  OdeSolution sol;
  OdeState& st = sol.state;
  st.t = 0.0;
  st.m = std::log(std::abs(q.theta));
  // The positive branch with the gamma adjustment starts from v_0 = sigma^2.
  st.v = (q.theta > 0.0 && cfg.gamma_enabled) ? s2 : 0.0;
  observer(std::size_t{0}, static_cast<const OdeState&>(st));

  for (std::size_t i = 0; i < cfg.steps; ++i) {
    double dm = 0.0, dv = 0.0;
    try {
      dm = drift_m(st, q, cfg.overflow_guard);
      if (i == 0) {
        dv = cfg.initial_variance_slope ? s2 : 0.0;
      } else {
        const double r = variance_radicand(st, q, cfg);
        if (r < 0.0) {
          ++sol.clamped_steps;
        } else {
          dv = std::sqrt(r);
        }
      }
    } catch (const OverflowError& e) {
      throw DivergenceError("integrate: diverged at step " + std::to_string(i) + " (" + e.what() + ")", i);
    }
    st.m += dm * dt;
    st.v += dv * dt;
    st.t = static_cast<double>(i + 1) * dt;
    observer(i + 1, static_cast<const OdeState&>(st));
  }

  if (cfg.max_clamps && sol.clamped_steps > *cfg.max_clamps) {
    throw NegativeVariance("integrate: " + std::to_string(sol.clamped_steps) +
                           " steps had a negative variance radicand");
  }
  return sol;
}

inline OdeSolution integrate(const MgfQuery& q, const ZeroEntropyConfig& cfg = {}) {
  return integrate(q, cfg, [](std::size_t, const OdeState&) {});
}

/// exp(sign(theta) e^{m_1}) from an integrated state.
inline double zero_entropy_estimator(const MgfQuery& q, const OdeState& end) {
  const double inner = q.sign() * detail::checked_exp(end.m, "zero_entropy_estimator");
  return detail::checked_exp(inner, "zero_entropy_estimator");
}

inline MgfEstimate mgf_zero_entropy(const MgfQuery& q, const ZeroEntropyConfig& cfg = {}) {
  cfg.validate();
  MgfEstimate out;
  out.method = Method::zero_entropy;
  if (q.theta == 0.0) {
    out.value = 1.0;
    out.diagnostics = {{"steps", 0.0}};
    return out;
  }
  const OdeSolution sol = integrate(q, cfg);
  try {
    out.value = zero_entropy_estimator(q, sol.state);
  } catch (const OverflowError& e) {
    throw DivergenceError(std::string("mgf_zero_entropy: ") + e.what(), cfg.steps);
  }
  out.diagnostics = {{"m_1", sol.state.m},
                     {"v_1", sol.state.v},
                     {"steps", static_cast<double>(cfg.steps)},
                     {"clamped_steps", static_cast<double>(sol.clamped_steps)},
                     {"gamma", gamma_factor(q, cfg)}};
  return out;
}

/// Terminal values y_1 of independently simulated paths.
struct PathEnsemble {
  std::vector<double> terminal_values;
  std::size_t n_paths = 0;   // == terminal_values.size()
  std::size_t excluded = 0;  // paths dropped after overflowing
  std::size_t steps = 0;
  RngSeed seed;
};

/// Euler-Maruyama from y_0 = ln|theta| with one standard-normal shock per path
/// per step. Path i draws from the sub-stream derive_seed(seed, i), so the
/// ensemble is identical for any `threads` (0 = hardware concurrency).
inline PathEnsemble simulate_paths(const MgfQuery& q, std::size_t n_paths, std::size_t steps, RngSeed seed,
                                   unsigned threads = 0) {
  if (q.theta == 0.0) throw DomainError("simulate_paths: theta must be non-zero");
  if (n_paths < 1) throw DomainError("simulate_paths: n_paths must be >= 1");
  if (steps < 1) throw DomainError("simulate_paths: steps must be >= 1");

  const double dt = 1.0 / static_cast<double>(steps);
  const double s2 = q.sigma * q.sigma;
  const double base = (q.mu + 0.5 * s2) * dt;
  const double nonlinear = q.sign() * 0.5 * s2 * dt;
  const double shock = q.sigma * std::sqrt(dt);
  const double y0 = std::log(std::abs(q.theta));

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> terminal(n_paths, kNaN);

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      NormalStream z(derive_seed(seed, p));
      double y = y0;
      bool ok = true;
      for (std::size_t i = 0; i < steps; ++i) {
        if (!(y <= detail::kLogMax)) {
          ok = false;
          break;
        }
        y += base + nonlinear * std::exp(y) + shock * z();
      }
      terminal[p] = (ok && std::isfinite(y)) ? y : kNaN;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_paths));
  if (threads <= 1) {
    run(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_paths + threads - 1) / threads;
    for (std::size_t begin = 0; begin < n_paths; begin += chunk) {
      pool.emplace_back(run, begin, std::min(n_paths, begin + chunk));
    }
    for (auto& t : pool) t.join();
  }

  PathEnsemble out;
  out.steps = steps;
  out.seed = seed;
  out.terminal_values.reserve(n_paths);
  for (double y : terminal) {
    if (std::isnan(y)) {
      ++out.excluded;
    } else {
      out.terminal_values.push_back(y);
    }
  }
  out.n_paths = out.terminal_values.size();
  return out;
}

}  // namespace lnmgf
