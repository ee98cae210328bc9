#pragma once

#include <random>

#include "dnls/spectral_grid.hpp"

namespace dnls::test {

inline Complex random_complex(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> r(0.0, 1.0), th(0.0, 6.283185307179586);
  const double rho = radius * std::sqrt(r(rng));
  return std::polar(rho, th(rng));
}

/// Random nodal values, no smoothness.
inline ComplexField random_field(const BoxDomain& d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  ComplexField u(d);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = {n(rng), n(rng)};
  return u;
}

/// Random field with sine coefficients decaying like (1 + lambda)^{-decay}.
inline ComplexField smooth_field(const BoxDomain& d, std::mt19937_64& rng, double decay = 1.5) {
  std::normal_distribution<double> n(0.0, 1.0);
  const auto& lam = laplacian_eigenvalues(d);
  SpectralField c(d);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c.coeffs()[k] = Complex(n(rng), n(rng)) * std::pow(1.0 + lam[k], -decay);
  }
  return inverse_sine_transform(c);
}

}  // namespace dnls::test
