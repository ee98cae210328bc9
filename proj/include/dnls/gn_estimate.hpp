#pragma once

#include <cstdint>
#include <string>

#include "dnls/spectral_grid.hpp"

namespace dnls {

struct GnEstimate {
  /// Largest gn_ratio found; a lower bound on the interpolation constant.
  double lower_bound = 0.0;
  double safety_factor = 2.0;
  /// lower_bound * safety_factor.
  double value = 0.0;
  int evaluations = 0;
  std::string best_family;
};

/// Maximizes gn_ratio(., m, ell) over a deterministic candidate sequence:
/// product sine modes, powers of the ground mode, Gaussians windowed by the
/// ground mode, then alternating random smooth fields and coordinate-wise
/// perturbations of the best coefficients. The sequence depends only on the
/// seed, so the estimate is non-decreasing in budget.
GnEstimate estimate_gn_constant(const BoxDomain& domain, double m, int ell, int budget,
                                std::uint64_t seed = 42, double safety_factor = 2.0);

}  // namespace dnls
