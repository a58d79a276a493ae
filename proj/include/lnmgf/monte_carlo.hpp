#pragma once

// Plain Monte Carlo estimate of E[exp(theta e^x)], x ~ N(mu, sigma^2).
//
// Samples are split into blocks of `batch` draws. Block b draws from the
// sub-stream derive_seed(seed, b) and keeps its own compensated sums; the
// block sums are merged in block order. The estimate is therefore the same
// for any number of threads.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "lnmgf/errors.hpp"
#include "lnmgf/estimate.hpp"
#include "lnmgf/gaussian.hpp"
#include "lnmgf/summation.hpp"

namespace lnmgf {

struct McConfig {
  std::size_t n_samples = 1'000'000;
  RngSeed seed{0x5eed};
  std::size_t batch = 65'536;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 1;

  void validate() const {
    if (n_samples < 1000) throw DomainError("McConfig: n_samples must be >= 1000");
    if (batch < 1) throw DomainError("McConfig: batch must be >= 1");
  }
};

namespace detail {

struct McBlock {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  bool overflow = false;
  double bad_x = 0.0;
};

}  // namespace detail

inline MgfEstimate mgf_monte_carlo(const MgfQuery& q, const McConfig& cfg = {}) {
  cfg.validate();
  MgfEstimate out;
  out.method = Method::monte_carlo;
  const double n = static_cast<double>(cfg.n_samples);
  if (q.theta == 0.0) {
    out.value = 1.0;
    out.diagnostics = {{"std_error", 0.0}, {"n_samples", n}};
    return out;
  }

  const std::size_t n_blocks = (cfg.n_samples + cfg.batch - 1) / cfg.batch;
  std::vector<detail::McBlock> blocks(n_blocks);
  const GaussianParams p = q.gaussian();
  const double theta = q.theta;

  auto run_block = [&](std::size_t b) {
    detail::McBlock& blk = blocks[b];
    NormalStream z(derive_seed(cfg.seed, b));
    const std::size_t begin = b * cfg.batch;
    const std::size_t end = std::min(cfg.n_samples, begin + cfg.batch);
    for (std::size_t i = begin; i < end; ++i) {
      const double x = sample(p, z);
      const double f = std::exp(theta * std::exp(x));
      if (!std::isfinite(f)) {
        blk.overflow = true;
        blk.bad_x = x;
        return;
      }
      blk.sum += f;
      blk.sum_sq += f * f;
    }
  };

  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < n_blocks; b += threads) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  CompensatedSum sum, sum_sq;
  for (const auto& blk : blocks) {
    if (blk.overflow) {
      throw OverflowError("mgf_monte_carlo: summand exp(theta e^x) not finite at x = " +
                          std::to_string(blk.bad_x));
    }
    sum.merge(blk.sum);
    sum_sq.merge(blk.sum_sq);
  }

  const double mean = sum.value() / n;
  const double var = std::max(0.0, (sum_sq.value() - n * mean * mean) / (n - 1.0));
  out.value = mean;
  out.diagnostics = {{"std_error", std::sqrt(var / n)}, {"n_samples", n}};
  return out;
}

}  // namespace lnmgf
