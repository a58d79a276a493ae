#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "lnmgf/errors.hpp"
#include "lnmgf/gaussian.hpp"

namespace lnmgf {

/// Problem instance M(theta) = E[exp(theta * e^x)], x ~ N(mu, sigma^2).
struct MgfQuery {
  double mu = 0.0;
  double sigma = 1.0;
  double theta = 0.0;

  MgfQuery() = default;
  MgfQuery(double mu_, double sigma_, double theta_) : mu(mu_), sigma(sigma_), theta(theta_) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
      throw DomainError("MgfQuery: need finite mu and sigma > 0");
    }
    if (!std::isfinite(theta)) throw DomainError("MgfQuery: theta must be finite");
  }

  GaussianParams gaussian() const { return {mu, sigma}; }

  /// +1 or -1; only meaningful for theta != 0.
  double sign() const { return theta > 0.0 ? 1.0 : -1.0; }
};

enum class Method { zero_entropy, thin_tile, laplace_w, monte_carlo };

inline constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::zero_entropy: return "zero_entropy";
    case Method::thin_tile: return "thin_tile";
    case Method::laplace_w: return "laplace_w";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

/// Accepts the canonical names plus the short aliases used on the command line.
inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "zero_entropy" || s == "ze") return Method::zero_entropy;
  if (s == "thin_tile" || s == "tt") return Method::thin_tile;
  if (s == "laplace_w" || s == "laplace" || s == "lw") return Method::laplace_w;
  if (s == "monte_carlo" || s == "mc") return Method::monte_carlo;
  return std::nullopt;
}

/// A method-tagged MGF value plus whatever diagnostics the method produces.
struct MgfEstimate {
  double value = 0.0;
  Method method = Method::zero_entropy;
  std::map<std::string, double> diagnostics;
};

}  // namespace lnmgf
