#pragma once

// Uniform entry point over the four estimators.

#include <array>

#include "lnmgf/estimate.hpp"
#include "lnmgf/laplace.hpp"
#include "lnmgf/monte_carlo.hpp"
#include "lnmgf/thin_tile.hpp"
#include "lnmgf/zero_entropy.hpp"

namespace lnmgf {

inline constexpr std::array<Method, 4> kAllMethods{Method::zero_entropy, Method::thin_tile, Method::laplace_w,
                                                   Method::monte_carlo};

struct MethodSettings {
  ZeroEntropyConfig zero_entropy;
  TileGridConfig thin_tile;
  LaplaceConfig laplace;
  McConfig monte_carlo;
};

inline MgfEstimate estimate(Method m, const MgfQuery& q, const MethodSettings& s = {}) {
  switch (m) {
    case Method::zero_entropy: return mgf_zero_entropy(q, s.zero_entropy);
    case Method::thin_tile: return mgf_thintile(q, s.thin_tile);
    case Method::laplace_w: return mgf_asmussen(q, s.laplace);
    case Method::monte_carlo: return mgf_monte_carlo(q, s.monte_carlo);
  }
  throw DomainError("estimate: unknown method");
}

}  // namespace lnmgf
