#pragma once

// Thin-tile integration: E[f(X)] for X ~ N(mu, sigma^2) on a non-uniform grid
// built outward from the mode. Each pair of tiles (one on each side of the
// mode) spans an incremental probability mass dA_n = 2 h^2 / s_n, where the
// tile height is h = sqrt(1 / (2N)) and the slope s_n is the magnitude of the
// standardized density derivative, floored at one. The right edge of the n-th
// pair sits at x_n = mu - sigma * Phi^{-1}((1 - A_n) / 2).

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lnmgf/errors.hpp"
#include "lnmgf/estimate.hpp"
#include "lnmgf/gaussian.hpp"
#include "lnmgf/summation.hpp"

namespace lnmgf {

struct TileGridConfig {
  /// N, the number of tile pairs; the grid places at most N - 1 standard pairs.
  std::size_t n_pairs = 80'000;
  /// Stop once the probability mass outside the grid drops below this.
  double tail_cutoff = 1e-12;
  /// After the standard pairs, keep adding tail tiles until tail_cutoff is met.
  bool tail_tiles = false;
  /// Each tail tile absorbs this fraction of the mass still outside the grid.
  double tail_fraction = 0.25;

  double height() const { return std::sqrt(1.0 / (2.0 * static_cast<double>(n_pairs))); }

  void validate() const {
    if (n_pairs < 2) throw DomainError("TileGridConfig: n_pairs must be >= 2");
    if (!(tail_cutoff > 0.0 && tail_cutoff <= 1e-6)) {
      throw DomainError("TileGridConfig: tail_cutoff must lie in (0, 1e-6]");
    }
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
      throw DomainError("TileGridConfig: tail_fraction must lie in (0, 1)");
    }
  }
};

/// Right-hand coordinates and areas of the tile pairs. Index 0 of `x` is the
/// mode; `slope`, `area`, `cumulative` and `outside` are indexed by pair n - 1.
struct TileGrid {
  GaussianParams params;
  double height = 0.0;
  std::vector<double> x;           // x_0 .. x_K
  std::vector<double> slope;       // s_1 .. s_K
  std::vector<double> area;        // dA_1 .. dA_K
  std::vector<double> cumulative;  // A_1 .. A_K
  std::vector<double> outside;     // 1 - A_n, tracked directly
  std::size_t standard_pairs = 0;  // pairs placed by the slope rule; the rest are tail tiles

  std::size_t pairs() const noexcept { return area.size(); }
  double coverage() const noexcept { return cumulative.empty() ? 0.0 : cumulative.back(); }
  double uncovered() const noexcept { return outside.empty() ? 1.0 : outside.back(); }
};

struct Expectation {
  double value = 0.0;
  double coverage = 0.0;
  std::size_t n_evals = 0;
};

/// Slope of the n-th tile pair given the previous right edge, in
/// standardized coordinates: max(1, |z| * phi(z)), z = (x - mu) / sigma.
inline double tile_slope(double x_prev, const GaussianParams& p) {
  const double z = (x_prev - p.mu) / p.sigma;
  return std::max(1.0, std::abs(z) * pdf_std(z));
}

inline TileGrid build_grid(const GaussianParams& p, const TileGridConfig& cfg) {
  cfg.validate();
  TileGrid g;
  g.params = p;
  g.height = cfg.height();
  const double h2 = g.height * g.height;

  g.x.reserve(cfg.n_pairs);
  g.x.push_back(p.mu);

  CompensatedSum covered;
  double outside = 1.0;

  auto place = [&](double slope, double d_area) {
    outside -= d_area;
    covered += d_area;
    const double half = 0.5 * outside;
    if (!(half > 0.0 && half < 1.0)) {
      throw DomainError("build_grid: quantile argument " + std::to_string(half) +
                        " left (0, 1); tail_cutoff too small");
    }
    g.slope.push_back(slope);
    g.area.push_back(d_area);
    g.cumulative.push_back(covered.value());
    g.outside.push_back(outside);
    g.x.push_back(p.mu - p.sigma * inverse_cdf_std(half));
  };

  for (std::size_t n = 1; n < cfg.n_pairs; ++n) {
    const double s = tile_slope(g.x.back(), p);
    place(s, 2.0 * h2 / s);
    if (outside < cfg.tail_cutoff) break;
  }
  g.standard_pairs = g.pairs();

  if (cfg.tail_tiles) {
    while (outside >= cfg.tail_cutoff) {
      const double d_area = cfg.tail_fraction * outside;
      // Report the slope that would have produced this area under the
      // standard rule, so dA_n = 2 h^2 / s_n holds for every tile.
      place(2.0 * h2 / d_area, d_area);
    }
  }
  return g;
}

/// Area-weighted average of the four-corner observations of f over the grid,
/// normalized by the mass the grid actually covers. Evaluations at the
/// mirrored points use the reflection 2 mu - x about the mode.
template <std::invocable<double> F>
Expectation expectation(F&& f, const TileGrid& g) {
  const std::size_t k = g.pairs();
  const double mu = g.params.mu;
  std::vector<double> right(k + 1), left(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    const double xr = g.x[i];
    const double xl = 2.0 * mu - xr;
    right[i] = static_cast<double>(f(xr));
    left[i] = static_cast<double>(f(xl));
    if (!std::isfinite(right[i])) {
      throw NonFiniteIntegrand("expectation: integrand not finite at x = " + std::to_string(xr), xr);
    }
    if (!std::isfinite(left[i])) {
      throw NonFiniteIntegrand("expectation: integrand not finite at x = " + std::to_string(xl), xl);
    }
  }

  CompensatedSum weighted, total;
  for (std::size_t n = 1; n <= k; ++n) {
    const double obs = 0.25 * (right[n] + right[n - 1] + left[n] + left[n - 1]);
    weighted += obs * g.area[n - 1];
    total += g.area[n - 1];
  }
  return Expectation{weighted.value() / total.value(), g.coverage(), 2 * (k + 1)};
}

template <std::invocable<double> F>
Expectation expectation(F&& f, const GaussianParams& p, const TileGridConfig& cfg) {
  return expectation(std::forward<F>(f), build_grid(p, cfg));
}

/// M(theta) = E[exp(theta e^x)] on a prebuilt grid (lets callers share one
/// grid across several theta values).
inline MgfEstimate mgf_thintile(const MgfQuery& q, const TileGrid& g) {
  const double theta = q.theta;
  const Expectation e = expectation([theta](double x) { return std::exp(theta * std::exp(x)); }, g);
  MgfEstimate out;
  out.value = e.value;
  out.method = Method::thin_tile;
  out.diagnostics = {{"coverage", e.coverage},
                     {"uncovered", g.uncovered()},
                     {"pairs", static_cast<double>(g.pairs())},
                     {"standard_pairs", static_cast<double>(g.standard_pairs)},
                     {"n_evals", static_cast<double>(e.n_evals)},
                     {"h", g.height}};
  return out;
}

inline MgfEstimate mgf_thintile(const MgfQuery& q, const TileGridConfig& cfg = {}) {
  return mgf_thintile(q, build_grid(q.gaussian(), cfg));
}

/// Debug dump: `n,x_n,s_n,dA_n,A_n`, one row per tile pair, round-trip precision.
inline void write_grid_csv(std::ostream& os, const TileGrid& g) {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "n,x_n,s_n,dA_n,A_n\n";
  for (std::size_t n = 1; n <= g.pairs(); ++n) {
    os << n << ',' << g.x[n] << ',' << g.slope[n - 1] << ',' << g.area[n - 1] << ','
       << g.cumulative[n - 1] << '\n';
  }
  os.precision(old_precision);
}

}  // namespace lnmgf
